#ifndef MOBB_LP_HPP_
#define MOBB_LP_HPP_

#include "mobb/instance.hpp"
#include "mobb/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace mobb {

enum class lp_status : unsigned char { optimal, infeasible };

// Single-objective LP over box-bounded variables. All declared variables
// carry finite bounds; slacks and artificials are internal to the solver.
template <typename S>
struct lp_problem {
  struct lrow {
    std::vector<S> coeffs;
    relation rel = relation::le;
    S rhs{};
  };

  int num_vars = 0;
  std::vector<S> objective;
  std::vector<lrow> rows;
  std::vector<S> lower, upper;
};

// Nonbasic variables sit at a bound; the basis descriptor stores one state
// per structural and slack column and can seed a warm start on a problem
// with identical row/column structure.
enum class var_state : signed char { at_lower, at_upper, basic };

struct lp_basis {
  std::vector<var_state> state;
};

template <typename S>
struct lp_result {
  lp_status status = lp_status::infeasible;
  S value{};
  std::vector<S> primal;
  lp_basis basis;
};

namespace lp_detail {

template <typename S>
class simplex {
  using T = scalar_traits<S>;

 public:
  explicit simplex(lp_problem<S> const& p) : m_p(p) {
    m_m = static_cast<int>(p.rows.size());
    m_nstruct = p.num_vars;
    m_nslack = 0;
    for (auto const& r : p.rows)
      if (r.rel == relation::le) ++m_nslack;
    m_ncols = m_nstruct + m_nslack + m_m;  // artificials appended per row
    m_tol = T::feas_tol();
  }

  lp_result<S> solve(lp_basis const* warm, std::vector<S> const* lex_secondary) {
    build_tableau();
    bool warm_ok = warm != nullptr && try_warm_start(*warm);
    if (!warm_ok) {
      if (warm != nullptr) build_tableau();  // a rejected warm attempt reduced the tableau
      cold_start();
      set_phase1_costs();
      run();
      if (phase1_value() > m_tol) {
        lp_result<S> res;
        res.status = lp_status::infeasible;
        return res;
      }
    }
    // Freeze artificials and optimize the real objective.
    for (int j = art_begin(); j < m_ncols; ++j) {
      m_lo[j] = S(0);
      m_hi[j] = S(0);
      m_hi_finite[j] = true;
    }
    set_phase2_costs();
    run();
    if (lex_secondary == nullptr) return extract();

    // Lexicographic second stage: the primary-optimal face is exactly the
    // set of feasible points with every nonzero-reduced-cost nonbasic
    // variable pinned at its bound, so pin them and reoptimize in place.
    {
      std::vector<S> cb(m_m);
      for (int i = 0; i < m_m; ++i) cb[i] = m_cost[m_basis[i]];
      for (int j = 0; j < m_ncols; ++j) {
        if (m_state[j] == var_state::basic) continue;
        if (m_hi_finite[j] && m_lo[j] == m_hi[j]) continue;
        S d = m_cost[j];
        for (int i = 0; i < m_m; ++i)
          if (!T::is_zero(m_tab[i][j]) && !T::is_zero(cb[i])) d -= cb[i] * m_tab[i][j];
        if (!T::is_zero(d)) {
          S const v = nonbasic_value(j);
          m_lo[j] = v;
          m_hi[j] = v;
          m_hi_finite[j] = true;
        }
      }
    }
    m_cost.assign(m_ncols, S(0));
    for (int j = 0; j < m_nstruct; ++j) m_cost[j] = (*lex_secondary)[j];
    run();
    auto res = extract();
    S v(0);
    for (int j = 0; j < m_nstruct; ++j)
      if (!T::is_zero((*lex_secondary)[j]) && !T::is_zero(res.primal[j]))
        v += (*lex_secondary)[j] * res.primal[j];
    res.value = v;
    return res;
  }

 private:
  int slack_col_of_row(int i) const { return m_slack_col[i]; }
  int art_begin() const { return m_nstruct + m_nslack; }

  void build_tableau() {
    m_tab.assign(m_m, std::vector<S>(m_ncols, S(0)));
    m_lo.assign(m_ncols, S(0));
    m_hi.assign(m_ncols, S(0));
    m_hi_finite.assign(m_ncols, true);
    m_state.assign(m_ncols, var_state::at_lower);
    m_slack_col.assign(m_m, -1);
    m_art_sign.assign(m_m, S(1));

    for (int j = 0; j < m_nstruct; ++j) {
      m_lo[j] = m_p.lower[j];
      m_hi[j] = m_p.upper[j];
    }
    int next_slack = m_nstruct;
    for (int i = 0; i < m_m; ++i) {
      for (int j = 0; j < m_nstruct; ++j) m_tab[i][j] = m_p.rows[i].coeffs[j];
      if (m_p.rows[i].rel == relation::le) {
        m_slack_col[i] = next_slack;
        m_tab[i][next_slack] = S(1);
        m_hi_finite[next_slack] = false;  // slack in [0, inf)
        ++next_slack;
      }
      // artificial column placeholder; sign fixed at cold start
      m_tab[i][art_begin() + i] = S(1);
    }
    m_basis.assign(m_m, -1);
    m_xb.assign(m_m, S(0));
  }

  void cold_start() {
    // Nonbasic variables start at their lower bound.
    for (int j = 0; j < m_ncols; ++j) m_state[j] = var_state::at_lower;
    std::vector<S> residual(m_m);
    for (int i = 0; i < m_m; ++i) {
      S r = m_p.rows[i].rhs;
      for (int j = 0; j < m_nstruct; ++j)
        if (!T::is_zero(m_tab[i][j]) && !T::is_zero(m_lo[j])) r -= m_tab[i][j] * m_lo[j];
      residual[i] = r;
    }
    for (int i = 0; i < m_m; ++i) {
      int const art = art_begin() + i;
      if (m_p.rows[i].rel == relation::le && residual[i] >= S(0)) {
        m_basis[i] = slack_col_of_row(i);
        m_xb[i] = residual[i];
        m_lo[art] = S(0);
        m_hi[art] = S(0);  // unused artificial stays fixed at zero
      } else {
        if (residual[i] < S(0)) {
          m_art_sign[i] = S(-1);
          m_tab[i][art] = S(-1);
        }
        m_basis[i] = art;
        m_xb[i] = abs_value(residual[i]);
        m_hi_finite[art] = false;
        m_state[art] = var_state::basic;
        // normalize the pivot entry to +1
        if (m_art_sign[i] < S(0))
          for (auto& v : m_tab[i]) v = -v;
      }
      if (m_basis[i] == slack_col_of_row(i)) m_state[m_basis[i]] = var_state::basic;
    }
  }

  bool try_warm_start(lp_basis const& warm) {
    if (static_cast<int>(warm.state.size()) != m_nstruct + m_nslack) return false;
    std::vector<int> basics;
    for (int j = 0; j < m_nstruct + m_nslack; ++j)
      if (warm.state[j] == var_state::basic) basics.push_back(j);
    if (static_cast<int>(basics.size()) != m_m) return false;

    // Reduce the tableau so the designated columns form the basis.
    std::vector<S> rhs(m_m);
    for (int i = 0; i < m_m; ++i) rhs[i] = m_p.rows[i].rhs;
    std::vector<bool> row_used(m_m, false);
    std::vector<int> basis_of_row(m_m, -1);
    for (int col : basics) {
      int pivot_row = -1;
      for (int i = 0; i < m_m; ++i)
        if (!row_used[i] && !T::is_zero(m_tab[i][col])) {
          pivot_row = i;
          break;
        }
      if (pivot_row < 0) return false;  // singular basis
      row_used[pivot_row] = true;
      basis_of_row[pivot_row] = col;
      S const piv = m_tab[pivot_row][col];
      for (auto& v : m_tab[pivot_row]) v /= piv;
      rhs[pivot_row] /= piv;
      for (int i = 0; i < m_m; ++i) {
        if (i == pivot_row) continue;
        S const f = m_tab[i][col];
        if (T::is_zero(f)) continue;
        for (int j = 0; j < m_ncols; ++j) m_tab[i][j] -= f * m_tab[pivot_row][j];
        rhs[i] -= f * rhs[pivot_row];
      }
    }

    for (int j = 0; j < m_nstruct + m_nslack; ++j) m_state[j] = warm.state[j];
    for (int i = 0; i < m_m; ++i) {
      m_basis[i] = basis_of_row[i];
      if (m_basis[i] < 0) return false;
    }
    // Basic values given the nonbasic assignment; reject if out of bounds.
    for (int i = 0; i < m_m; ++i) {
      S v = rhs[i];
      for (int j = 0; j < m_ncols; ++j) {
        if (m_state[j] == var_state::basic) continue;
        S const val = nonbasic_value(j);
        if (!T::is_zero(val) && !T::is_zero(m_tab[i][j])) v -= m_tab[i][j] * val;
      }
      m_xb[i] = v;
    }
    for (int i = 0; i < m_m; ++i) {
      int const b = m_basis[i];
      if (m_xb[i] < m_lo[b] - m_tol) return false;
      if (m_hi_finite[b] && m_xb[i] > m_hi[b] + m_tol) return false;
    }
    return true;
  }

  S nonbasic_value(int j) const {
    return m_state[j] == var_state::at_upper ? m_hi[j] : m_lo[j];
  }

  void set_phase1_costs() {
    m_cost.assign(m_ncols, S(0));
    for (int j = art_begin(); j < m_ncols; ++j) m_cost[j] = S(1);
  }

  void set_phase2_costs() {
    m_cost.assign(m_ncols, S(0));
    for (int j = 0; j < m_nstruct; ++j) m_cost[j] = m_p.objective[j];
  }

  S phase1_value() const {
    S v(0);
    for (int i = 0; i < m_m; ++i)
      if (m_basis[i] >= art_begin()) v += m_xb[i];
    return v;
  }

  void run() {
    bool bland = false;
    int degenerate_streak = 0;
    int const bland_threshold = 4 * (m_m + m_ncols) + 16;
    long const pivot_cap = 50000L + 1000L * (m_m + m_ncols);

    std::vector<S> cb(m_m);
    std::vector<std::pair<S, int>> candidates;  // (violation, column)
    for (long iter = 0;; ++iter) {
      if (iter > pivot_cap)
        throw std::runtime_error("lp_solve: pivot limit exceeded (cycling guard)");

      // Pricing pass. Bound flips leave the basis and hence all reduced
      // costs unchanged, so one pass can drive any number of flips; only a
      // pivot invalidates it.
      for (int i = 0; i < m_m; ++i) cb[i] = m_cost[m_basis[i]];
      candidates.clear();
      for (int j = 0; j < m_ncols; ++j) {
        if (m_state[j] == var_state::basic) continue;
        if (m_hi_finite[j] && m_lo[j] == m_hi[j]) continue;  // fixed
        S d = m_cost[j];
        for (int i = 0; i < m_m; ++i)
          if (!T::is_zero(m_tab[i][j]) && !T::is_zero(cb[i])) d -= cb[i] * m_tab[i][j];
        if (m_state[j] == var_state::at_lower && d < -m_tol)
          candidates.emplace_back(-d, j);
        else if (m_state[j] == var_state::at_upper && d > m_tol)
          candidates.emplace_back(d, j);
        if (bland && !candidates.empty()) break;  // smallest index suffices
      }
      if (candidates.empty()) return;  // phase optimal
      if (!bland)
        std::sort(candidates.begin(), candidates.end(), [](auto const& a, auto const& b) {
          return a.first > b.first || (a.first == b.first && a.second < b.second);
        });

      bool pivoted = false;
      for (auto const& [viol, enter] : candidates) {
        int const dir = m_state[enter] == var_state::at_lower ? 1 : -1;

        // Ratio test against basic bounds and the entering bound span.
        bool const flip_finite = m_hi_finite[enter];
        S const flip_t = flip_finite ? S(m_hi[enter] - m_lo[enter]) : S(0);
        int leave_row = -1;
        bool leave_to_upper = false;
        bool have_t = false;
        S best_t(0);
        for (int i = 0; i < m_m; ++i) {
          S const w = m_tab[i][enter];
          if (T::is_zero(w)) continue;
          S const delta = dir > 0 ? S(-w) : w;  // x_B[i] moves by delta * t
          int const b = m_basis[i];
          S t;
          bool to_upper;
          if (delta < S(0)) {
            t = (m_xb[i] - m_lo[b]) / -delta;
            to_upper = false;
          } else {
            if (!m_hi_finite[b]) continue;
            t = (m_hi[b] - m_xb[i]) / delta;
            to_upper = true;
          }
          if (t < S(0)) t = S(0);  // clamp tolerance drift
          if (!have_t || t < best_t || (t == best_t && m_basis[i] < m_basis[leave_row])) {
            have_t = true;
            best_t = t;
            leave_row = i;
            leave_to_upper = to_upper;
          }
        }

        bool const do_flip = flip_finite && (!have_t || flip_t <= best_t);
        if (!do_flip && !have_t)
          throw std::runtime_error("lp_solve: unbounded direction (malformed problem)");

        S const t = do_flip ? flip_t : best_t;
        for (int i = 0; i < m_m; ++i) {
          S const w = m_tab[i][enter];
          if (T::is_zero(w) || T::is_zero(t)) continue;
          S const delta = dir > 0 ? S(-w) : w;
          m_xb[i] += delta * t;
        }

        if (do_flip) {
          m_state[enter] =
              m_state[enter] == var_state::at_lower ? var_state::at_upper : var_state::at_lower;
          degenerate_streak = 0;  // bound flips strictly improve
          ++iter;
          continue;
        }

        S const enter_val = nonbasic_value(enter) + (dir > 0 ? t : S(-t));
        int const leaving = m_basis[leave_row];
        m_state[leaving] = leave_to_upper ? var_state::at_upper : var_state::at_lower;

        S const piv = m_tab[leave_row][enter];
        for (auto& v : m_tab[leave_row]) v /= piv;
        for (int i = 0; i < m_m; ++i) {
          if (i == leave_row) continue;
          S const f = m_tab[i][enter];
          if (T::is_zero(f)) continue;
          for (int j = 0; j < m_ncols; ++j)
            if (!T::is_zero(m_tab[leave_row][j])) m_tab[i][j] -= f * m_tab[leave_row][j];
        }
        m_basis[leave_row] = enter;
        m_state[enter] = var_state::basic;
        m_xb[leave_row] = enter_val;

        if (T::is_zero(t)) {
          if (++degenerate_streak > bland_threshold) bland = true;
        } else {
          degenerate_streak = 0;
        }
        pivoted = true;
        break;  // reduced costs are stale after a pivot
      }
      (void)pivoted;
    }
  }

  lp_result<S> extract() const {
    lp_result<S> res;
    res.status = lp_status::optimal;
    res.primal.assign(m_nstruct, S(0));
    std::vector<int> row_of(m_ncols, -1);
    for (int i = 0; i < m_m; ++i) row_of[m_basis[i]] = i;
    for (int j = 0; j < m_nstruct; ++j)
      res.primal[j] = m_state[j] == var_state::basic ? m_xb[row_of[j]] : nonbasic_value(j);
    S v(0);
    for (int j = 0; j < m_nstruct; ++j)
      if (!T::is_zero(m_p.objective[j]) && !T::is_zero(res.primal[j]))
        v += m_p.objective[j] * res.primal[j];
    res.value = v;
    res.basis.state.assign(m_state.begin(), m_state.begin() + m_nstruct + m_nslack);
    return res;
  }

  lp_problem<S> const& m_p;
  int m_m = 0, m_nstruct = 0, m_nslack = 0, m_ncols = 0;
  S m_tol{};
  std::vector<std::vector<S>> m_tab;
  std::vector<S> m_xb;
  std::vector<int> m_basis;
  std::vector<var_state> m_state;
  std::vector<S> m_lo, m_hi;
  std::vector<char> m_hi_finite;
  std::vector<S> m_cost;
  std::vector<int> m_slack_col;
  std::vector<S> m_art_sign;
};

}  // namespace lp_detail

namespace lp_detail {

template <typename S>
void check_dims(lp_problem<S> const& p) {
  if (static_cast<int>(p.objective.size()) != p.num_vars ||
      static_cast<int>(p.lower.size()) != p.num_vars ||
      static_cast<int>(p.upper.size()) != p.num_vars)
    throw std::invalid_argument("lp_solve: inconsistent problem dimensions");
  for (auto const& r : p.rows)
    if (static_cast<int>(r.coeffs.size()) != p.num_vars)
      throw std::invalid_argument("lp_solve: row dimension mismatch");
}

}  // namespace lp_detail

// Bounded-variable primal simplex. Deterministic: largest-coefficient
// pricing with fixed tie-breaks, switching to Bland's rule after a run of
// degenerate pivots. Reentrant; the optional warm basis must come from a
// problem with the same rows and columns.
template <typename S>
lp_result<S> lp_solve(lp_problem<S> const& p, lp_basis const* warm = nullptr) {
  lp_detail::check_dims(p);
  lp_detail::simplex<S> solver(p);
  return solver.solve(warm, nullptr);
}

// Lexicographic solve: minimize p.objective, then `secondary` over the
// primary-optimal face. Returns the secondary stage's optimum; `value` is
// the secondary objective value.
template <typename S>
lp_result<S> lp_solve_lex(lp_problem<S> const& p, std::vector<S> const& secondary,
                          lp_basis const* warm = nullptr) {
  lp_detail::check_dims(p);
  if (static_cast<int>(secondary.size()) != p.num_vars)
    throw std::invalid_argument("lp_solve_lex: secondary objective dimension mismatch");
  lp_detail::simplex<S> solver(p);
  return solver.solve(warm, &secondary);
}

}  // namespace mobb

#endif  // MOBB_LP_HPP_
