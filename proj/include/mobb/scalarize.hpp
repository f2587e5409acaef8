#ifndef MOBB_SCALARIZE_HPP_
#define MOBB_SCALARIZE_HPP_

#include "mobb/bounds.hpp"
#include "mobb/instance.hpp"
#include "mobb/lp.hpp"
#include "mobb/relax.hpp"

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace mobb {

// Positive weighted-sum weights, normalized to coprime integers. The
// normalization defines cache identity: scaling lambda leaves the optimizer
// set unchanged.
struct weight_vector {
  std::int64_t l1 = 0, l2 = 0;

  friend bool operator==(weight_vector const&, weight_vector const&) = default;
};

// Normal of the segment between two adjacent incumbent points. Degenerate
// pairs (a shared coordinate) yield no weight vector; the caller skips the
// trigger since a zero weight would only give weakly efficient optima.
template <typename S>
std::optional<weight_vector> derive_lambda(point2<S> const& zi, point2<S> const& zj) {
  using T = scalar_traits<S>;
  if (!T::is_integer(zi.z1 - zj.z1) || !T::is_integer(zi.z2 - zj.z2)) return std::nullopt;
  std::int64_t const l1 = T::to_int64(S(zi.z2 - zj.z2));
  std::int64_t const l2 = T::to_int64(S(zj.z1 - zi.z1));
  if (l1 <= 0 || l2 <= 0) return std::nullopt;
  std::int64_t const g = std::gcd(l1, l2);
  return weight_vector{l1 / g, l2 / g};
}

// Parameters of one augmented weighted Tchebycheff scalarization: reference
// point s at the local ideal of two adjacent nondominated points, weights
// equalizing the corners' Tchebycheff level, and an augmentation small
// enough that on the integer grid inside the box the augmentation never
// overturns a strict Tchebycheff preference.
template <typename S>
struct awt_params {
  awt_levelset<S> level;
  point2<S> corner1, corner2;  // sorted by z1
};

template <typename S>
std::optional<awt_params<S>> make_awt_params(point2<S> const& z1, point2<S> const& z2) {
  if (!(z1.z1 < z2.z1)) return std::nullopt;
  S const d1 = z2.z1 - z1.z1;
  S const d2 = z1.z2 - z2.z2;
  if (!(d1 > S(0)) || !(d2 > S(0))) return std::nullopt;  // box empty

  awt_params<S> p;
  p.corner1 = z1;
  p.corner2 = z2;
  p.level.s = point2<S>{z1.z1, z2.z2};
  p.level.w1 = d2 / (d1 + d2);
  p.level.w2 = d1 / (d1 + d2);
  p.level.tau = S(1) / (S(2) * (d1 + d2) * (d1 + d2));
  return p;
}

// Exact 0/1 IP minimization by LP-based branch and bound: best-bound node
// order with depth-first tie-break, branching on the variable whose LP value
// is closest to one half. Auxiliary continuous columns (for the AWT
// reformulation) are never branched on.
template <typename S>
struct ip_extras {
  std::vector<typename lp_problem<S>::lrow> extra_rows;  // width n + aux count
  std::vector<std::pair<S, S>> aux_bounds;
  // Objective takes integer values on integer-feasible points, so LP bounds
  // may be rounded up before pruning.
  bool integral_objective = false;
};

template <typename S>
struct ip_optimum {
  S value{};
  solution sol;
};

template <typename S>
std::optional<ip_optimum<S>> ip_solve(std::vector<S> const& objective, instance const& inst,
                                      ip_extras<S> const& extras = {}) {
  using T = scalar_traits<S>;
  int const n = inst.n;
  int const naux = static_cast<int>(extras.aux_bounds.size());
  if (static_cast<int>(objective.size()) != n + naux)
    throw std::invalid_argument("ip_solve: objective dimension mismatch");

  lp_problem<S> p;
  p.num_vars = n + naux;
  p.objective = objective;
  p.lower.assign(n + naux, S(0));
  p.upper.assign(n + naux, S(1));
  for (int a = 0; a < naux; ++a) {
    p.lower[n + a] = extras.aux_bounds[a].first;
    p.upper[n + a] = extras.aux_bounds[a].second;
  }
  for (auto const& row : inst.rows) {
    typename lp_problem<S>::lrow r;
    r.rel = row.rel;
    r.rhs = T::from_int(row.rhs);
    r.coeffs.assign(n + naux, S(0));
    for (int j = 0; j < n; ++j) r.coeffs[j] = T::from_int(row.coeffs[j]);
    p.rows.push_back(std::move(r));
  }
  for (auto const& row : extras.extra_rows) {
    if (static_cast<int>(row.coeffs.size()) != n + naux)
      throw std::invalid_argument("ip_solve: extra row dimension mismatch");
    p.rows.push_back(row);
  }

  struct bb_node {
    S bound{};
    std::vector<S> primal;
    lp_basis basis;
    std::vector<signed char> fix;
    std::uint64_t id = 0;
    int frac_var = -1;
  };

  std::optional<ip_optimum<S>> best;
  std::uint64_t next_id = 0;

  auto eval_node = [&](std::vector<signed char> const& fix, lp_basis const* warm,
                       std::optional<bb_node>& out) {
    for (int j = 0; j < n; ++j) {
      p.lower[j] = fix[j] >= 0 ? T::from_int(fix[j]) : S(0);
      p.upper[j] = fix[j] >= 0 ? p.lower[j] : S(1);
    }
    auto res = lp_solve(p, warm);
    if (res.status == lp_status::infeasible) return;
    if (extras.integral_objective) res.value = T::ceil_value(res.value);
    int frac = -1;
    S frac_dist{};
    for (int j = 0; j < n; ++j) {
      if (T::is_zero_one(res.primal[j])) continue;
      S const dist = abs_value(S(res.primal[j] - S(1) / S(2)));
      if (frac < 0 || dist < frac_dist) {
        frac = j;
        frac_dist = dist;
      }
    }
    bb_node nd;
    nd.bound = res.value;
    nd.primal = std::move(res.primal);
    nd.basis = std::move(res.basis);
    nd.fix = fix;
    nd.id = next_id++;
    nd.frac_var = frac;
    out = std::move(nd);
  };

  auto accept_integral = [&](bb_node const& nd) {
    if (best && !(nd.bound < best->value)) return;  // first optimum found wins ties
    std::vector<std::uint8_t> x(n);
    for (int j = 0; j < n; ++j) x[j] = T::is_zero(nd.primal[j]) ? 0 : 1;
    ip_optimum<S> opt;
    opt.value = nd.bound;
    opt.sol = make_solution(inst, std::move(x));
    best = std::move(opt);
  };

  std::vector<bb_node> open;
  auto push = [&](std::optional<bb_node>&& nd) {
    if (!nd) return;
    if (best && !(nd->bound < best->value)) return;
    if (nd->frac_var < 0) {
      accept_integral(*nd);
      return;
    }
    open.push_back(std::move(*nd));
  };

  {
    std::optional<bb_node> root;
    eval_node(std::vector<signed char>(n, -1), nullptr, root);
    push(std::move(root));
  }

  while (!open.empty()) {
    // best bound, then most recently created
    std::size_t pick = 0;
    for (std::size_t i = 1; i < open.size(); ++i) {
      if (open[i].bound < open[pick].bound ||
          (open[i].bound == open[pick].bound && open[i].id > open[pick].id))
        pick = i;
    }
    bb_node cur = std::move(open[pick]);
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
    if (best && !(cur.bound < best->value)) continue;

    for (int v = 0; v <= 1; ++v) {
      auto fix = cur.fix;
      fix[cur.frac_var] = static_cast<signed char>(v);
      std::optional<bb_node> child;
      eval_node(fix, &cur.basis, child);
      push(std::move(child));
    }
  }
  return best;
}

// Cache of solved scalarizations keyed by coprime lambda (weighted sum) and
// by the ordered corner pair (AWT).
template <typename S>
struct scalar_cache {
  std::map<std::pair<std::int64_t, std::int64_t>, ip_optimum<S>> ws;
  std::map<std::array<std::int64_t, 4>, ip_optimum<S>> awt;
};

enum class scalar_outcome : unsigned char { new_optimum, cache_hit, skipped };

template <typename S>
struct ws_result {
  scalar_outcome outcome = scalar_outcome::skipped;
  S value{};
  solution sol;
};

template <typename S>
ws_result<S> solve_weighted_sum(instance const& inst, weight_vector lambda,
                                scalar_cache<S>& cache) {
  using T = scalar_traits<S>;
  ws_result<S> out;
  if (lambda.l1 <= 0 || lambda.l2 <= 0) return out;  // skipped
  std::int64_t const g = std::gcd(lambda.l1, lambda.l2);
  lambda.l1 /= g;
  lambda.l2 /= g;

  auto const key = std::make_pair(lambda.l1, lambda.l2);
  if (auto it = cache.ws.find(key); it != cache.ws.end()) {
    out.outcome = scalar_outcome::cache_hit;
    out.value = it->second.value;
    out.sol = it->second.sol;
    return out;
  }

  std::vector<S> obj(inst.n);
  for (int j = 0; j < inst.n; ++j)
    obj[j] = T::from_int(lambda.l1 * inst.obj[0][j] + lambda.l2 * inst.obj[1][j]);
  ip_extras<S> ex;
  ex.integral_objective = true;
  auto opt = ip_solve(obj, inst, ex);
  if (!opt) throw std::runtime_error("solve_weighted_sum: instance has no feasible point");
  cache.ws.emplace(key, *opt);
  out.outcome = scalar_outcome::new_optimum;
  out.value = opt->value;
  out.sol = std::move(opt->sol);
  return out;
}

template <typename S>
std::array<std::int64_t, 4> awt_cache_key(awt_params<S> const& p) {
  using T = scalar_traits<S>;
  return {T::to_int64(p.corner1.z1), T::to_int64(p.corner1.z2), T::to_int64(p.corner2.z1),
          T::to_int64(p.corner2.z2)};
}

// Minimize the augmented weighted Tchebycheff norm around p.level.s over the
// feasible set, via the MILP with auxiliary columns u1 >= |z1 - s1|,
// u2 >= |z2 - s2| and t >= w_i u_i, objective t + tau (u1 + u2). Strong
// monotonicity of the norm makes every optimal solution efficient.
template <typename S>
ws_result<S> solve_awt(instance const& inst, awt_params<S> const& p, scalar_cache<S>& cache) {
  using T = scalar_traits<S>;
  ws_result<S> out;

  auto const key = awt_cache_key(p);
  if (auto it = cache.awt.find(key); it != cache.awt.end()) {
    out.outcome = scalar_outcome::cache_hit;
    out.value = it->second.value;
    out.sol = it->second.sol;
    return out;
  }

  int const n = inst.n;
  auto const& ls = p.level;

  // Clear the rational weights: minimizing M (t + tau (u1 + u2)) with
  // T := M t keeps all MILP data integral when the corners are integral,
  // which keeps the rational tableaus small and makes the objective
  // integer-valued on integer points (so LP bounds can be rounded up).
  S scale = S(1);
  bool integral = false;
  if constexpr (scalar_traits<S>::exact) {
    auto const m = boost::multiprecision::lcm(
        boost::multiprecision::lcm(denominator(ls.w1), denominator(ls.w2)),
        denominator(ls.tau));
    scale = S(m);
    integral = T::is_integer(scale * ls.tau) && T::is_integer(scale * ls.w1) &&
               T::is_integer(scale * ls.w2);
  }

  // Safe finite bounds for u1, u2, T from the coefficient ranges.
  std::array<S, 2> lo_img{S(0), S(0)}, hi_img{S(0), S(0)};
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < n; ++j) {
      S const c = T::from_int(inst.obj[k][j]);
      if (c < S(0)) lo_img[k] += c;
      if (c > S(0)) hi_img[k] += c;
    }
  S u1_max =
      std::max(abs_value(S(lo_img[0] - ls.s.z1)), abs_value(S(hi_img[0] - ls.s.z1)));
  S u2_max =
      std::max(abs_value(S(lo_img[1] - ls.s.z2)), abs_value(S(hi_img[1] - ls.s.z2)));
  // The corners are feasible images, and on integral data every feasible
  // point outside their closed box has a strictly larger norm than the
  // better corner, so |z_i - s_i| may be capped at the box dimensions.
  u1_max = std::min(u1_max, S(p.corner2.z1 - p.corner1.z1));
  u2_max = std::min(u2_max, S(p.corner1.z2 - p.corner2.z2));
  S const sw1 = scale * ls.w1;
  S const sw2 = scale * ls.w2;
  S const t_max = std::max(sw1 * u1_max, sw2 * u2_max);

  ip_extras<S> ex;
  ex.integral_objective = integral;
  ex.aux_bounds = {{S(0), u1_max}, {S(0), u2_max}, {S(0), t_max}};
  int const iu1 = n, iu2 = n + 1, it_col = n + 2;

  auto add_row = [&](int k, S sign, int ucol) {
    typename lp_problem<S>::lrow r;
    r.rel = relation::le;
    r.coeffs.assign(n + 3, S(0));
    for (int j = 0; j < n; ++j) r.coeffs[j] = sign * T::from_int(inst.obj[k][j]);
    r.coeffs[ucol] = S(-1);
    r.rhs = sign * (k == 0 ? ls.s.z1 : ls.s.z2);
    ex.extra_rows.push_back(std::move(r));
  };
  add_row(0, S(1), iu1);   //  z1 - u1 <= s1
  add_row(0, S(-1), iu1);  // -z1 - u1 <= -s1
  add_row(1, S(1), iu2);
  add_row(1, S(-1), iu2);
  auto add_t_row = [&](S const& w, int ucol) {  // w u - T <= 0
    typename lp_problem<S>::lrow r;
    r.rel = relation::le;
    r.coeffs.assign(n + 3, S(0));
    r.coeffs[ucol] = w;
    r.coeffs[it_col] = S(-1);
    r.rhs = S(0);
    ex.extra_rows.push_back(std::move(r));
  };
  add_t_row(sw1, iu1);
  add_t_row(sw2, iu2);

  std::vector<S> obj(n + 3, S(0));
  obj[iu1] = scale * ls.tau;
  obj[iu2] = scale * ls.tau;
  obj[it_col] = S(1);

  auto opt = ip_solve(obj, inst, ex);
  if (!opt) throw std::runtime_error("solve_awt: instance has no feasible point");
  opt->value = opt->value / scale;  // back to the norm's own units
  cache.awt.emplace(key, *opt);
  out.outcome = scalar_outcome::new_optimum;
  out.value = opt->value;
  out.sol = std::move(opt->sol);
  return out;
}

}  // namespace mobb

#endif  // MOBB_SCALARIZE_HPP_
