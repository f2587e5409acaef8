#ifndef MOBB_POLYLINE_HPP_
#define MOBB_POLYLINE_HPP_

#include "mobb/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

namespace mobb {

enum class vertex_origin : unsigned char { relaxation, ws_cut, awt_cut };

// Lower bound set of a node: a staircase polyline with strictly increasing z1
// and strictly decreasing z2. The region it bounds, L + R2>=, extends the
// polyline by a vertical ray above the first vertex and a horizontal ray
// right of the last.
template <typename S>
struct bound_polyline {
  struct vertex {
    point2<S> p;
    vertex_origin origin = vertex_origin::relaxation;
  };
  std::vector<vertex> verts;
  bool convex = true;

  bool empty() const { return verts.empty(); }
  point2<S> const& front() const { return verts.front().p; }
  point2<S> const& back() const { return verts.back().p; }
};

template <typename S>
bool is_valid_staircase(bound_polyline<S> const& L) {
  if (L.verts.empty()) return false;
  for (std::size_t i = 1; i < L.verts.size(); ++i) {
    if (!(L.verts[i - 1].p.z1 < L.verts[i].p.z1)) return false;
    if (!(L.verts[i - 1].p.z2 > L.verts[i].p.z2)) return false;
  }
  return true;
}

template <typename S>
bool is_convex_chain(bound_polyline<S> const& L) {
  for (std::size_t i = 2; i < L.verts.size(); ++i) {
    auto const& a = L.verts[i - 2].p;
    auto const& b = L.verts[i - 1].p;
    auto const& c = L.verts[i].p;
    S cross = (b.z1 - a.z1) * (c.z2 - b.z2) - (b.z2 - a.z2) * (c.z1 - b.z1);
    if (cross < S(0)) return false;  // left turn breaks the convex chain
  }
  return true;
}

// Staircase height at column z1, clamped to the end rays.
template <typename S>
S floor_at(bound_polyline<S> const& L, S const& z1) {
  auto const& v = L.verts;
  if (z1 <= v.front().p.z1) return v.front().p.z2;
  if (z1 >= v.back().p.z1) return v.back().p.z2;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (z1 <= v[i].p.z1) {
      auto const& a = v[i - 1].p;
      auto const& b = v[i].p;
      return a.z2 + (z1 - a.z1) * (b.z2 - a.z2) / (b.z1 - a.z1);
    }
  }
  return v.back().p.z2;
}

// Column of the staircase point at height z2, clamped to the end rays.
template <typename S>
S column_at(bound_polyline<S> const& L, S const& z2) {
  auto const& v = L.verts;
  if (z2 >= v.front().p.z2) return v.front().p.z1;
  if (z2 <= v.back().p.z2) return v.back().p.z1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (z2 >= v[i].p.z2) {
      auto const& a = v[i - 1].p;
      auto const& b = v[i].p;
      return a.z1 + (z2 - a.z2) * (b.z1 - a.z1) / (b.z2 - a.z2);
    }
  }
  return v.back().p.z1;
}

// Membership of p in L + R2>= (weak, with end-ray extensions).
template <typename S>
bool in_upper_region(bound_polyline<S> const& L, point2<S> const& p) {
  if (p.z1 < L.front().z1) return false;
  return p.z2 >= floor_at(L, p.z1);
}

// Level set geometry of the augmented weighted Tchebycheff norm around a
// reference point s: F(z) = max(w1|z1-s1|, w2|z2-s2|) + tau (|z1-s1|+|z2-s2|).
template <typename S>
struct awt_levelset {
  S w1{}, w2{}, tau{};
  point2<S> s{};

  S value(point2<S> const& z) const {
    S a = abs_value(S(z.z1 - s.z1));
    S b = abs_value(S(z.z2 - s.z2));
    S m = w1 * a;
    if (w2 * b > m) m = w2 * b;
    return m + tau * (a + b);
  }
};

namespace polyline_detail {

template <typename S>
point2<S> lerp(point2<S> const& a, point2<S> const& b, S const& t) {
  return point2<S>{a.z1 + t * (b.z1 - a.z1), a.z2 + t * (b.z2 - a.z2)};
}

// Generic "subtract an open excluded region" walk. The excluded region is
// described by: an inside test, exact segment crossings (parameters t in
// [0,1] where the boundary is met), and the region's ceiling (max z2 per
// column) as a piecewise-linear curve sampled over a clamped column range.
// The result is the nondominated boundary of (L + R2>=) minus the region;
// domination gaps are reconnected by straight segments, which can only relax
// the bound, never tighten it past a feasible point.
template <typename S, typename InsideFn, typename CrossFn, typename CeilFn>
bound_polyline<S> clip_excluded(bound_polyline<S> const& L, InsideFn inside, CrossFn crossings,
                                CeilFn ceil_piece, vertex_origin cut_org) {
  using vertex = typename bound_polyline<S>::vertex;
  auto const& v = L.verts;

  std::vector<vertex> emitted;
  auto emit = [&](point2<S> const& p, vertex_origin org) {
    if (!emitted.empty() && emitted.back().p == p) return;
    emitted.push_back(vertex{p, org});
  };

  bool changed = false;
  bool mode_inside = false;
  S win_from{};

  auto fill_ceiling = [&](S const& x_from, S const& x_to) {
    for (auto const& p : ceil_piece(x_from, x_to)) emit(p, cut_org);
  };

  if (inside(v.front().p)) {
    changed = true;
    auto top = ceil_piece(v.front().p.z1, v.front().p.z1);
    emit(top.front(), cut_org);
    mode_inside = true;
    win_from = v.front().p.z1;
  } else {
    emit(v.front().p, v.front().origin);
  }

  for (std::size_t i = 1; i < v.size(); ++i) {
    point2<S> const a = v[i - 1].p;
    point2<S> const b = v[i].p;
    std::vector<S> ts = crossings(a, b);
    ts.insert(ts.begin(), S(0));
    ts.push_back(S(1));
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      S const ta = ts[k], tb = ts[k + 1];
      if (!(ta < tb)) continue;
      S const tmid = (ta + tb) / S(2);
      bool const sub_inside = inside(lerp(a, b, tmid));
      point2<S> const pa = k == 0 ? a : lerp(a, b, ta);
      point2<S> const pb = k + 2 == ts.size() ? b : lerp(a, b, tb);
      if (sub_inside) {
        changed = true;
        if (!mode_inside) {
          mode_inside = true;
          win_from = pa.z1;
        }
      } else {
        if (mode_inside) {
          fill_ceiling(win_from, pa.z1);
          emit(pa, cut_org);
          mode_inside = false;
        }
        emit(pa, k == 0 ? v[i - 1].origin : cut_org);
        emit(pb, k + 2 == ts.size() ? v[i].origin : cut_org);
      }
    }
  }

  if (mode_inside) {
    point2<S> const last = v.back().p;
    if (!inside(last)) {
      // The window closed exactly on the last vertex (boundary touch).
      fill_ceiling(win_from, last.z1);
      emit(last, v.back().origin);
    } else {
      // The staircase ends inside the region; exit along the horizontal ray.
      // The region is bounded in z1 for both cut kinds handled here, so the
      // doubling walk below always finds an outside point.
      S far = last.z1 + S(1);
      while (inside(point2<S>{far, last.z2})) far = far + (far - last.z1);
      far = far + S(1);  // strictly outside, so the exit crossing is interior
      point2<S> const ray_end{far, last.z2};
      std::vector<S> ts = crossings(last, ray_end);
      if (ts.empty()) throw std::logic_error("clip: no exit crossing on horizontal ray");
      point2<S> const exit = lerp(last, ray_end, ts.back());
      fill_ceiling(win_from, exit.z1);
      emit(exit, cut_org);
    }
  }

  if (!changed) return L;

  // Nondominated filter: keep points at a strict running minimum of z2.
  bound_polyline<S> out;
  out.convex = L.convex;
  for (auto const& e : emitted) {
    if (out.verts.empty()) {
      out.verts.push_back(e);
      continue;
    }
    auto const& lastp = out.verts.back().p;
    if (e.p.z2 < lastp.z2 && e.p.z1 > lastp.z1) out.verts.push_back(e);
  }
  assert(is_valid_staircase(out));
  return out;
}

}  // namespace polyline_detail

// Intersect L + R2>= with the halfspace {z : l1 z1 + l2 z2 >= c} and return
// the nondominated boundary. Vertices introduced on the cut line carry the
// given origin. Convexity is preserved.
template <typename S>
bound_polyline<S> clip_halfspace(bound_polyline<S> const& L, S const& l1, S const& l2, S const& c,
                                 vertex_origin org = vertex_origin::ws_cut) {
  if (!(l1 > S(0)) || !(l2 > S(0)))
    throw std::invalid_argument("clip_halfspace: weights must be strictly positive");

  auto val = [&](point2<S> const& p) { return l1 * p.z1 + l2 * p.z2; };
  auto inside = [&](point2<S> const& p) { return val(p) < c; };
  auto crossings = [&](point2<S> const& a, point2<S> const& b) {
    std::vector<S> ts;
    S const va = val(a), vb = val(b);
    if (va == vb) return ts;
    S const t = (c - va) / (vb - va);
    if (t > S(0) && t < S(1)) ts.push_back(t);
    return ts;
  };
  auto ceil_piece = [&](S const& x_from, S const& x_to) {
    std::vector<point2<S>> pts;
    pts.push_back(point2<S>{x_from, (c - l1 * x_from) / l2});
    if (x_to > x_from) pts.push_back(point2<S>{x_to, (c - l1 * x_to) / l2});
    return pts;
  };

  bool const was_convex = L.convex;
  auto out = polyline_detail::clip_excluded(L, inside, crossings, ceil_piece, org);
  out.convex = was_convex;
  return out;
}

// Remove the open sublevel set {z : F(z) < vstar} of the augmented weighted
// Tchebycheff norm from L + R2>= and return the nondominated boundary. The
// sublevel set is a convex octagon around ls.s; only its upper boundary can
// appear in the result. Introduces a reflex kink in general, so the convex
// flag drops to false whenever the polyline changes.
template <typename S>
bound_polyline<S> clip_awt_levelset(bound_polyline<S> const& L, awt_levelset<S> const& ls,
                                    S const& vstar) {
  if (!(vstar > S(0))) return L;

  auto inside = [&](point2<S> const& p) { return ls.value(p) < vstar; };

  // Ceiling of the octagon: V_left, K2, V_top, K1, V_right.
  S const D = ls.w1 * ls.w2 + ls.tau * (ls.w1 + ls.w2);
  S const ak = vstar * ls.w2 / D;
  S const bk = vstar * ls.w1 / D;
  std::vector<point2<S>> const ceiling = {
      point2<S>{ls.s.z1 - vstar / (ls.w1 + ls.tau), ls.s.z2},
      point2<S>{ls.s.z1 - ak, ls.s.z2 + bk},
      point2<S>{ls.s.z1, ls.s.z2 + vstar / (ls.w2 + ls.tau)},
      point2<S>{ls.s.z1 + ak, ls.s.z2 + bk},
      point2<S>{ls.s.z1 + vstar / (ls.w1 + ls.tau), ls.s.z2},
  };

  auto ceil_at = [&](S const& x) -> S {
    if (x <= ceiling.front().z1) return ceiling.front().z2;
    if (x >= ceiling.back().z1) return ceiling.back().z2;
    for (std::size_t i = 1; i < ceiling.size(); ++i)
      if (x <= ceiling[i].z1) {
        auto const& a = ceiling[i - 1];
        auto const& b = ceiling[i];
        return a.z2 + (x - a.z1) * (b.z2 - a.z2) / (b.z1 - a.z1);
      }
    return ceiling.back().z2;
  };

  auto ceil_piece = [&](S const& x_from, S const& x_to) {
    std::vector<point2<S>> pts;
    pts.push_back(point2<S>{x_from, ceil_at(x_from)});
    for (auto const& cp : ceiling)
      if (cp.z1 > x_from && cp.z1 < x_to) pts.push_back(cp);
    if (x_to > x_from) pts.push_back(point2<S>{x_to, ceil_at(x_to)});
    return pts;
  };

  // F along a segment is convex piecewise-linear; breakpoints occur where a
  // coordinate passes the reference point or the max switches branch.
  auto crossings = [&](point2<S> const& a, point2<S> const& b) {
    std::vector<S> breaks{S(0), S(1)};
    auto add_root = [&](S const& num, S const& den) {
      if (den == S(0)) return;
      S const t = num / den;
      if (t > S(0) && t < S(1)) breaks.push_back(t);
    };
    S const d1 = b.z1 - a.z1, d2 = b.z2 - a.z2;
    S const a1 = a.z1 - ls.s.z1, a2 = a.z2 - ls.s.z2;
    add_root(-a1, d1);                                              // z1 = s1
    add_root(-a2, d2);                                              // z2 = s2
    add_root(-(ls.w1 * a1 - ls.w2 * a2), ls.w1 * d1 - ls.w2 * d2);  // w1 u1 = w2 u2
    add_root(-(ls.w1 * a1 + ls.w2 * a2), ls.w1 * d1 + ls.w2 * d2);  // w1 u1 = -w2 u2
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<S> ts;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      S const fa = ls.value(polyline_detail::lerp(a, b, breaks[k])) - vstar;
      S const fb = ls.value(polyline_detail::lerp(a, b, breaks[k + 1])) - vstar;
      if (fa == S(0)) {
        if (breaks[k] > S(0) && breaks[k] < S(1)) ts.push_back(breaks[k]);
        continue;
      }
      if ((fa < S(0)) == (fb < S(0)) && fb != S(0)) continue;
      if (fb == S(0)) continue;  // picked up as the next piece's left end
      S const t = breaks[k] + (S(0) - fa) * (breaks[k + 1] - breaks[k]) / (fb - fa);
      if (t > S(0) && t < S(1)) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
  };

  auto out = polyline_detail::clip_excluded(L, inside, crossings, ceil_piece,
                                            vertex_origin::awt_cut);
  if (out.verts.size() != L.verts.size()) out.convex = false;
  else {
    for (std::size_t i = 0; i < out.verts.size(); ++i)
      if (!(out.verts[i].p == L.verts[i].p)) {
        out.convex = false;
        break;
      }
  }
  return out;
}

}  // namespace mobb

#endif  // MOBB_POLYLINE_HPP_
