#ifndef MOBB_BOUNDS_HPP_
#define MOBB_BOUNDS_HPP_

#include "mobb/instance.hpp"
#include "mobb/polyline.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <utility>
#include <vector>

namespace mobb {

// Incumbent list U: mutually nondominated feasible images sorted by z1
// ascending (hence z2 descending), one preimage each. Points proven
// nondominated by an IP scalarization carry the confirmed flag.
template <typename S>
class incumbent_list {
 public:
  struct entry {
    point2<S> image;
    solution pre;
    bool confirmed = false;
  };

  struct insert_outcome {
    bool inserted = false;
    std::vector<point2<S>> removed;
  };

  // The paper's U ⊎ {x}: reject if weakly dominated by a member (equality
  // counts), otherwise insert and drop every member the candidate dominates.
  insert_outcome insert(solution const& sol) {
    point2<S> const img = to_scalar_point<S>(sol.image);
    insert_outcome out;
    for (auto const& e : m_entries)
      if (weakly_dominates(e.image, img)) return out;  // Dominated
    std::vector<entry> kept;
    kept.reserve(m_entries.size() + 1);
    bool placed = false;
    for (auto& e : m_entries) {
      if (weakly_dominates(img, e.image)) {
        assert(!e.confirmed);
        out.removed.push_back(e.image);
        continue;
      }
      if (!placed && lex_less(img, e.image)) {
        kept.push_back(entry{img, sol, false});
        placed = true;
      }
      kept.push_back(std::move(e));
    }
    if (!placed) kept.push_back(entry{img, sol, false});
    m_entries = std::move(kept);
    out.inserted = true;
    return out;
  }

  bool contains(point2<S> const& img) const {
    for (auto const& e : m_entries)
      if (e.image == img) return true;
    return false;
  }

  void mark_confirmed(point2<S> const& img) {
    for (auto& e : m_entries)
      if (e.image == img) {
        e.confirmed = true;
        return;
      }
  }

  std::vector<entry> const& points() const { return m_entries; }
  bool empty() const { return m_entries.empty(); }
  std::size_t size() const { return m_entries.size(); }

  std::vector<point2<S>> confirmed_points() const {
    std::vector<point2<S>> out;
    for (auto const& e : m_entries)
      if (e.confirmed) out.push_back(e.image);
    return out;
  }

 private:
  std::vector<entry> m_entries;
};

// A local upper bound; either coordinate may be the sentinel M = infinity.
template <typename S>
struct local_upper_bound {
  S z1{}, z2{};
  bool inf1 = false, inf2 = false;
};

// Corners of the search region induced by U: interior lubs
// (z^{i+1}_1, z^i_2) plus the two sentinel corners.
template <typename S>
std::vector<local_upper_bound<S>> rebuild_lubs(incumbent_list<S> const& U) {
  std::vector<local_upper_bound<S>> lubs;
  auto const& pts = U.points();
  if (pts.empty()) {
    lubs.push_back(local_upper_bound<S>{S(0), S(0), true, true});
    return lubs;
  }
  lubs.push_back(local_upper_bound<S>{pts.front().image.z1, S(0), false, true});
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    lubs.push_back(
        local_upper_bound<S>{pts[i + 1].image.z1, pts[i].image.z2, false, false});
  lubs.push_back(local_upper_bound<S>{S(0), pts.back().image.z2, true, false});
  return lubs;
}

// K: the incumbent points lying in L + R2>= (weak membership).
template <typename S>
std::vector<point2<S>> points_above(incumbent_list<S> const& U, bound_polyline<S> const& L) {
  std::vector<point2<S>> out;
  for (auto const& e : U.points())
    if (in_upper_region(L, e.image)) out.push_back(e.image);
  return out;
}

namespace bounds_detail {

// Does any boundary point of L + R2>= lie strictly below-left of the lub?
template <typename S>
bool lub_strictly_above(bound_polyline<S> const& L, local_upper_bound<S> const& lu) {
  if (!lu.inf1 && !(lu.z1 > L.front().z1)) return false;
  if (lu.inf2) return true;
  S const floor = lu.inf1 ? L.back().z2 : floor_at(L, lu.z1);
  return lu.z2 > floor;
}

}  // namespace bounds_detail

// Fathoming by dominance: every feasible point of the subproblem is weakly
// dominated by U iff no local upper bound sits strictly above the lower
// bound set.
template <typename S>
bool fathom_by_dominance(bound_polyline<S> const& L,
                         std::vector<local_upper_bound<S>> const& lubs) {
  for (auto const& lu : lubs)
    if (bounds_detail::lub_strictly_above(L, lu)) return false;
  return true;
}

// Approximated hypervolume gap of one local upper bound: the triangle
// spanned by the lub and its two spanning points on the polyline.
template <typename S>
S hv_gap(bound_polyline<S> const& L, point2<S> const& lu) {
  S const sp1_z1 = column_at(L, lu.z2);
  S const sp2_z2 = floor_at(L, lu.z1);
  return abs_value(S(sp1_z1 - lu.z1)) * abs_value(S(sp2_z2 - lu.z2)) / S(2);
}

template <typename S>
struct gap_report_result {
  S thg{};
  S lhg{};
  std::optional<std::pair<point2<S>, point2<S>>> argmax;  // incumbent pair of largest gap
};

// Hypervolume-gap node score against the points of U above L. With fewer
// than two such points the halved bounding box of the polyline's extreme
// vertices stands in, so the strategy applies from the very first iteration.
template <typename S>
gap_report_result<S> gap_report(bound_polyline<S> const& L, incumbent_list<S> const& U) {
  gap_report_result<S> rep;
  auto K = points_above(U, L);
  if (K.size() < 2) {
    S const w = L.back().z1 - L.front().z1;
    S const h = L.front().z2 - L.back().z2;
    rep.thg = w * h / S(2);
    rep.lhg = rep.thg;
    return rep;
  }

  std::size_t const k = K.size();
  std::vector<point2<S>> lubs(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) lubs[i] = point2<S>{K[i + 1].z1, K[i].z2};

  std::vector<S> hg(k - 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    hg[i] = hv_gap(L, lubs[i]);
    if (hg[i] > hg[best]) best = i;
  }
  rep.lhg = hg[best];
  rep.argmax = std::make_pair(K[best], K[best + 1]);

  rep.thg = hg[0];
  for (std::size_t i = 1; i + 1 < k; ++i) {
    S const prev_sp2 = floor_at(L, lubs[i - 1].z1);
    S const cur_sp2 = floor_at(L, lubs[i].z1);
    S const mean_height =
        (abs_value(S(K[i].z2 - prev_sp2)) + abs_value(S(lubs[i].z2 - cur_sp2))) / S(2);
    rep.thg += mean_height * abs_value(S(K[i].z1 - lubs[i].z1));
  }
  return rep;
}

}  // namespace mobb

#endif  // MOBB_BOUNDS_HPP_
