#ifndef MOBB_RELAX_HPP_
#define MOBB_RELAX_HPP_

#include "mobb/instance.hpp"
#include "mobb/lp.hpp"
#include "mobb/polyline.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace mobb {

// -1 free, 0 fixed to zero, 1 fixed to one.
using fixing_vector = std::vector<signed char>;

// Basic primal solutions attaining the relaxation polyline's vertices, plus
// the per-variable fractionality tally the branching rule consumes.
template <typename S>
struct extreme_support {
  std::vector<std::vector<S>> primals;  // aligned with the polyline vertices
  std::vector<int> fractional_count;    // per variable
};

template <typename S>
struct relaxation_result {
  bound_polyline<S> lower_bound;
  extreme_support<S> support;
  lp_basis lex_basis[2];  // final bases of the lex endpoint solves, for child warm starts
};

namespace relax_detail {

template <typename S>
lp_problem<S> base_problem(instance const& inst, fixing_vector const& fix) {
  using T = scalar_traits<S>;
  lp_problem<S> p;
  p.num_vars = inst.n;
  p.objective.assign(inst.n, S(0));
  p.lower.assign(inst.n, S(0));
  p.upper.assign(inst.n, S(1));
  for (int j = 0; j < inst.n; ++j) {
    if (j < static_cast<int>(fix.size()) && fix[j] >= 0) {
      p.lower[j] = T::from_int(fix[j]);
      p.upper[j] = p.lower[j];
    }
  }
  p.rows.reserve(inst.rows.size());
  for (auto const& row : inst.rows) {
    typename lp_problem<S>::lrow r;
    r.rel = row.rel;
    r.rhs = T::from_int(row.rhs);
    r.coeffs.resize(inst.n);
    for (int j = 0; j < inst.n; ++j) r.coeffs[j] = T::from_int(row.coeffs[j]);
    p.rows.push_back(std::move(r));
  }
  return p;
}

template <typename S>
point2<S> image_of(instance const& inst, std::vector<S> const& x) {
  using T = scalar_traits<S>;
  point2<S> z{S(0), S(0)};
  for (int j = 0; j < inst.n; ++j) {
    z.z1 += T::from_int(inst.obj[0][j]) * x[j];
    z.z2 += T::from_int(inst.obj[1][j]) * x[j];
  }
  return z;
}

template <typename S>
void set_objective(lp_problem<S>& p, instance const& inst, S const& l1, S const& l2) {
  using T = scalar_traits<S>;
  for (int j = 0; j < inst.n; ++j)
    p.objective[j] = l1 * T::from_int(inst.obj[0][j]) + l2 * T::from_int(inst.obj[1][j]);
}

}  // namespace relax_detail

// Two-stage lexicographic endpoint: minimize objective `primary`, then the
// other objective over the primary-optimal face.
template <typename S>
std::optional<lp_result<S>> lex_endpoint_lp(instance const& inst, fixing_vector const& fix,
                                            int primary, lp_basis const* warm = nullptr) {
  using T = scalar_traits<S>;
  auto p = relax_detail::base_problem<S>(inst, fix);
  int const first = primary == 1 ? 0 : 1;
  int const second = 1 - first;

  for (int j = 0; j < inst.n; ++j) p.objective[j] = T::from_int(inst.obj[first][j]);
  std::vector<S> secondary(inst.n);
  for (int j = 0; j < inst.n; ++j) secondary[j] = T::from_int(inst.obj[second][j]);
  auto res = lp_solve_lex(p, secondary, warm);
  if (res.status == lp_status::infeasible) return std::nullopt;
  return res;
}

template <typename S>
std::optional<std::pair<point2<S>, std::vector<S>>> lex_endpoint(instance const& inst,
                                                                 fixing_vector const& fix,
                                                                 int primary) {
  auto res = lex_endpoint_lp<S>(inst, fix, primary);
  if (!res) return std::nullopt;
  return std::make_pair(relax_detail::image_of(inst, res->primal), std::move(res->primal));
}

// Full nondominated boundary of the LP relaxation under the given fixings:
// both lexicographic endpoints, then recursive weighted-sum refinement with
// lambda = (zL2 - zR2, zR1 - zL1) until no point lies strictly below a
// connecting segment. Vertices are exactly the extreme supported points.
template <typename S>
std::optional<relaxation_result<S>> dichotomic_frontier(instance const& inst,
                                                        fixing_vector const& fix,
                                                        lp_basis const* warm1 = nullptr,
                                                        lp_basis const* warm2 = nullptr) {
  auto left = lex_endpoint_lp<S>(inst, fix, 1, warm1);
  if (!left) return std::nullopt;
  auto right = lex_endpoint_lp<S>(inst, fix, 2, warm2);
  point2<S> const left_img = relax_detail::image_of(inst, left->primal);
  point2<S> const right_img = relax_detail::image_of(inst, right->primal);

  struct found {
    point2<S> z;
    std::vector<S> primal;
  };
  std::vector<found> verts;
  verts.push_back(found{left_img, std::move(left->primal)});
  if (!(right_img == left_img)) verts.push_back(found{right_img, std::move(right->primal)});

  if (verts.size() == 2) {
    auto p = relax_detail::base_problem<S>(inst, fix);
    struct seg {
      point2<S> a, b;
      std::optional<lp_basis> warm;
    };
    std::vector<seg> stack;
    stack.push_back(seg{verts[0].z, verts[1].z, left->basis});
    while (!stack.empty()) {
      seg cur = std::move(stack.back());
      stack.pop_back();
      S const l1 = cur.a.z2 - cur.b.z2;
      S const l2 = cur.b.z1 - cur.a.z1;
      relax_detail::set_objective(p, inst, l1, l2);
      auto res = lp_solve(p, cur.warm ? &*cur.warm : nullptr);
      if (res.status == lp_status::infeasible)
        throw std::logic_error("dichotomic_frontier: interior LP cannot be infeasible");
      point2<S> const z = relax_detail::image_of(inst, res.primal);
      S const improvement = (l1 * cur.a.z1 + l2 * cur.a.z2) - (l1 * z.z1 + l2 * z.z2);
      // Closes when the optimum ties an endpoint or lies on the segment;
      // inexact mode additionally needs a small margin to terminate.
      S const margin =
          scalar_traits<S>::exact ? S(0) : scalar_traits<S>::feas_tol() * S(100);
      if (improvement > margin) {
        verts.push_back(found{z, res.primal});
        stack.push_back(seg{z, cur.b, res.basis});
        stack.push_back(seg{cur.a, z, std::move(res.basis)});
      }
    }
  }

  std::sort(verts.begin(), verts.end(),
            [](found const& x, found const& y) { return x.z.z1 < y.z.z1; });
  // Enforce the staircase invariant; only inexact mode can produce near
  // duplicates, exact mode never drops anything here.
  std::vector<found> clean;
  for (auto& f : verts) {
    if (!clean.empty() && !(f.z.z1 > clean.back().z.z1 && f.z.z2 < clean.back().z.z2)) continue;
    clean.push_back(std::move(f));
  }
  verts = std::move(clean);

  relaxation_result<S> out;
  out.lex_basis[0] = std::move(left->basis);
  out.lex_basis[1] = std::move(right->basis);
  out.support.fractional_count.assign(inst.n, 0);
  for (auto& f : verts) {
    out.lower_bound.verts.push_back(
        typename bound_polyline<S>::vertex{f.z, vertex_origin::relaxation});
    for (int j = 0; j < inst.n; ++j)
      if (!scalar_traits<S>::is_zero_one(f.primal[j])) ++out.support.fractional_count[j];
    out.support.primals.push_back(std::move(f.primal));
  }
  out.lower_bound.convex = true;
  return out;
}

// Stored basic solutions whose assignments are integral.
template <typename S>
std::vector<solution> integer_extreme_points(instance const& inst,
                                             extreme_support<S> const& sup) {
  std::vector<solution> out;
  for (auto const& primal : sup.primals) {
    bool integral = true;
    for (int j = 0; j < inst.n && integral; ++j)
      integral = scalar_traits<S>::is_zero_one(primal[j]);
    if (!integral) continue;
    std::vector<std::uint8_t> x(inst.n);
    for (int j = 0; j < inst.n; ++j) x[j] = scalar_traits<S>::is_zero(primal[j]) ? 0 : 1;
    out.push_back(make_solution(inst, std::move(x)));
  }
  return out;
}

}  // namespace mobb

#endif  // MOBB_RELAX_HPP_
