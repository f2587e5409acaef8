#ifndef MOBB_ORACLE_HPP_
#define MOBB_ORACLE_HPP_

#include "mobb/instance.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mobb {

struct oracle_guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct oracle_result {
  std::vector<ipoint2> frontier;  // original sense, sorted by z1 ascending
  std::uint64_t enumerated = 0;
};

namespace oracle_detail {

// Keep the mutually nondominated subset (min-sense), sorted by z1.
inline std::vector<ipoint2> filter_frontier(std::vector<ipoint2> pts) {
  std::sort(pts.begin(), pts.end(), [](ipoint2 const& a, ipoint2 const& b) {
    return a.z1 < b.z1 || (a.z1 == b.z1 && a.z2 < b.z2);
  });
  std::vector<ipoint2> out;
  for (auto const& p : pts) {
    if (!out.empty() && out.back().z1 == p.z1) continue;  // same z1, worse or equal z2
    if (!out.empty() && out.back().z2 <= p.z2) continue;  // weakly dominated
    out.push_back(p);
  }
  return out;
}

// Gray-code walk over all 2^n assignments with incremental row/objective sums.
inline void enumerate_all(instance const& inst, std::vector<ipoint2>& images,
                          std::uint64_t& count) {
  int const n = inst.n;
  int const m = static_cast<int>(inst.rows.size());
  std::vector<std::int64_t> lhs(m, 0);
  std::int64_t z1 = 0, z2 = 0;
  std::vector<std::uint8_t> x(n, 0);

  auto feasible = [&]() {
    for (int i = 0; i < m; ++i) {
      auto const& row = inst.rows[i];
      if (row.rel == relation::le ? lhs[i] > row.rhs : lhs[i] != row.rhs) return false;
    }
    return true;
  };

  std::uint64_t const total = 1ull << n;
  for (std::uint64_t g = 0;; ++g) {
    ++count;
    if (feasible()) images.push_back(ipoint2{z1, z2});
    if (images.size() > (1u << 20)) images = filter_frontier(std::move(images));
    if (g + 1 == total) break;
    // flip the bit that changes between gray(g) and gray(g+1)
    std::uint64_t diff = (g ^ (g >> 1)) ^ ((g + 1) ^ ((g + 1) >> 1));
    int j = std::countr_zero(diff);
    std::int64_t const dir = x[j] ? -1 : 1;
    x[j] ^= 1;
    z1 += dir * inst.obj[0][j];
    z2 += dir * inst.obj[1][j];
    for (int i = 0; i < m; ++i) lhs[i] += dir * inst.rows[i].coeffs[j];
  }
}

inline void enumerate_assignment(instance const& inst, std::vector<ipoint2>& images,
                                 std::uint64_t& count) {
  int const l = inst.tag.l;
  std::vector<int> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    ++count;
    std::int64_t z1 = 0, z2 = 0;
    for (int i = 0; i < l; ++i) {
      z1 += inst.obj[0][i * l + perm[i]];
      z2 += inst.obj[1][i * l + perm[i]];
    }
    images.push_back(ipoint2{z1, z2});
  } while (std::next_permutation(perm.begin(), perm.end()));
}

// Per open facility set, the frontier of the assignment stage is the
// nondominated Minkowski sum of the customers' per-facility cost choices.
inline void enumerate_facility(instance const& inst, std::vector<ipoint2>& images,
                               std::uint64_t& count) {
  int const l = inst.tag.l;
  int const q = inst.tag.q;
  for (std::uint32_t open = 1; open < (1u << q); ++open) {
    ++count;
    std::int64_t f1 = 0, f2 = 0;
    for (int j = 0; j < q; ++j)
      if (open & (1u << j)) {
        f1 += inst.obj[0][l * q + j];
        f2 += inst.obj[1][l * q + j];
      }
    std::vector<ipoint2> acc{ipoint2{f1, f2}};
    for (int i = 0; i < l; ++i) {
      std::vector<ipoint2> choices;
      for (int j = 0; j < q; ++j)
        if (open & (1u << j))
          choices.push_back(ipoint2{inst.obj[0][i * q + j], inst.obj[1][i * q + j]});
      choices = filter_frontier(std::move(choices));
      std::vector<ipoint2> next;
      next.reserve(acc.size() * choices.size());
      for (auto const& a : acc)
        for (auto const& c : choices) next.push_back(ipoint2{a.z1 + c.z1, a.z2 + c.z2});
      acc = filter_frontier(std::move(next));
    }
    images.insert(images.end(), acc.begin(), acc.end());
  }
}

}  // namespace oracle_detail

// Exact nondominated image set by exhaustive enumeration; the independent
// ground truth the solver is checked against. Class-aware: assignment walks
// the l! permutations, facility location the 2^q open sets with an exact
// per-customer merge, everything else the full 0/1 cube.
inline oracle_result brute_force_frontier(instance const& inst) {
  using namespace oracle_detail;
  oracle_result res;
  std::vector<ipoint2> images;

  switch (inst.tag.kind) {
    case problem_class::assignment: {
      if (inst.tag.l > 8)
        throw oracle_guard_error("oracle guard: assignment limited to l <= 8");
      enumerate_assignment(inst, images, res.enumerated);
      break;
    }
    case problem_class::facility_location: {
      if (inst.tag.q > 12)
        throw oracle_guard_error("oracle guard: facility location limited to q <= 12");
      enumerate_facility(inst, images, res.enumerated);
      break;
    }
    default: {
      if (inst.n > 24)
        throw oracle_guard_error("oracle guard: enumeration limited to n <= 24");
      enumerate_all(inst, images, res.enumerated);
      break;
    }
  }

  auto frontier = filter_frontier(std::move(images));
  if (inst.sense == objective_sense::max) {
    for (auto& p : frontier) p = ipoint2{-p.z1, -p.z2};
    std::reverse(frontier.begin(), frontier.end());
  }
  res.frontier = std::move(frontier);
  return res;
}

}  // namespace mobb

#endif  // MOBB_ORACLE_HPP_
