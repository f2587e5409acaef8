#ifndef MOBB_SEARCH_HPP_
#define MOBB_SEARCH_HPP_

#include "mobb/bounds.hpp"
#include "mobb/instance.hpp"
#include "mobb/relax.hpp"
#include "mobb/scalarize.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mobb {

enum class node_order : unsigned char { depth_first, max_lhg, max_thg };
enum class scalarization_mode : unsigned char { none, ws_only, ws_plus_awt };
enum class awt_cut_mode : unsigned char { integrate, skip };

struct strategy {
  node_order order = node_order::depth_first;
  scalarization_mode scal = scalarization_mode::none;
  int alpha = 1;                               // trigger frequency class
  awt_cut_mode gamma = awt_cut_mode::integrate;  // integrate AWT level sets into bounds?
};

struct budget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
};

enum class trigger_kind : unsigned char { none, ws, awt };

struct run_event {
  enum class kind : unsigned char {
    fathomed_infeasible,
    fathomed_optimality,
    fathomed_dominance,
    branched,
    ws_trigger,
    awt_trigger,
  };
  kind k{};
  std::uint64_t iteration = 0;
  std::uint64_t node_id = 0;
  std::int64_t a = 0, b = 0;     // branched: var; triggers: lambda / box corner z1s
  std::uint32_t cuts_applied = 0;  // cuts active on this node's polyline
  std::uint8_t outcome = 0;        // triggers: 0 solved, 1 cache hit, 2 skipped

  friend bool operator==(run_event const&, run_event const&) = default;
};

struct run_stats {
  std::uint64_t iterations = 0;
  std::uint64_t nodes_explored = 0;
  std::uint64_t fathomed_infeasible = 0;
  std::uint64_t fathomed_optimality = 0;
  std::uint64_t fathomed_dominance = 0;
  std::uint64_t branched = 0;
  std::uint64_t ips_solved = 0;
  double wall_seconds = 0.0;
  bool complete = true;
  bool root_infeasible = false;
  bool schedule_fallback = false;  // generic class ran with the knapsack tables
  std::vector<run_event> events;
};

template <typename S>
struct ws_cut_record {
  weight_vector lambda;
  S value{};
};

template <typename S>
struct awt_cut_record {
  awt_levelset<S> level;
  S value{};
};

template <typename S>
struct solve_result {
  std::vector<std::pair<ipoint2, solution>> frontier;  // original sense, sorted by z1
  run_stats stats;
  std::vector<ws_cut_record<S>> ws_cuts;
  std::vector<awt_cut_record<S>> awt_cuts;
};

// A subproblem: variable fixings plus the gap score and incumbent pair
// inherited from the parent at creation and recomputed on exploration.
template <typename S>
struct search_node {
  std::uint64_t id = 0;
  std::uint64_t parent = 0;
  int depth = 0;
  fixing_vector fix;
  S score{};
  std::optional<std::pair<point2<S>, point2<S>>> gap_pair;
  std::optional<lp_basis> lex_warm1, lex_warm2;  // parent's endpoint bases
};

// Per-iteration scalarization schedule. The tables are class-specific; a
// generic instance falls back to the knapsack table.
inline trigger_kind schedule_trigger(std::uint64_t iter, strategy const& st,
                                     instance const& inst, bool* used_fallback = nullptr) {
  if (st.scal == scalarization_mode::none) return trigger_kind::none;

  std::uint64_t const n = static_cast<std::uint64_t>(inst.n);
  std::uint64_t limit = 0;       // end of the WS schedule (alpha 2/3)
  std::uint64_t m2 = 1, m3 = 1;  // phase moduli for alpha = 3
  std::uint64_t p1 = 0, p2 = 0, p3 = 0;  // cumulative phase boundaries for alpha = 3

  switch (inst.tag.kind) {
    case problem_class::assignment: {
      std::uint64_t const l = static_cast<std::uint64_t>(inst.tag.l);
      limit = n * l;
      m2 = l;
      m3 = n;
      p1 = limit / 3;
      p2 = 2 * limit / 3;
      p3 = limit;
      break;
    }
    case problem_class::facility_location: {
      std::uint64_t const nn = n * n;
      limit = nn / 4;
      m2 = n / 2;
      m3 = n;
      p1 = nn / 4;
      p2 = nn / 2;
      p3 = 3 * (nn / 4);
      break;
    }
    case problem_class::generic:
      if (used_fallback) *used_fallback = true;
      [[fallthrough]];
    case problem_class::knapsack: {
      std::uint64_t const nn = n * n;
      limit = nn;
      m2 = n;
      m3 = 2 * n;
      p1 = nn / 3;
      p2 = 2 * nn / 3;
      p3 = nn;
      break;
    }
  }
  if (m2 == 0) m2 = 1;
  if (m3 == 0) m3 = 1;

  // End of the last WS phase; AWT replaces or follows per alpha.
  std::uint64_t const ws_end = st.alpha == 2 ? limit : p3;

  if (st.scal == scalarization_mode::ws_plus_awt) {
    bool awt = false;
    if (st.alpha == 1)
      awt = iter % 50 == 0;
    else
      awt = iter > ws_end && iter % 50 == 0;
    if (awt) return trigger_kind::awt;
  }

  bool ws = false;
  switch (st.alpha) {
    case 1: ws = iter % 10 == 0; break;
    case 2: ws = iter % 10 == 0 && iter <= limit; break;
    case 3:
      if (iter <= p1)
        ws = iter % 10 == 0;
      else if (iter <= p2)
        ws = iter % m2 == 0;
      else if (iter <= p3)
        ws = iter % m3 == 0;
      break;
    default: break;
  }
  return ws ? trigger_kind::ws : trigger_kind::none;
}

// Branching rule: the variable most often fractional across the extreme
// supports; ties to the smallest index. No fractional variable signals the
// caller to branch on the smallest unfixed index instead.
template <typename S>
std::optional<int> most_fractional(extreme_support<S> const& sup) {
  int best = -1;
  for (int j = 0; j < static_cast<int>(sup.fractional_count.size()); ++j)
    if (sup.fractional_count[j] > 0 &&
        (best < 0 || sup.fractional_count[j] > sup.fractional_count[best]))
      best = j;
  if (best < 0) return std::nullopt;
  return best;
}

// Split a node on one variable. Children extend the fixings by exactly that
// index and inherit the parent's gap score and incumbent pair; the 0-child
// gets the smaller id.
template <typename S>
std::pair<search_node<S>, search_node<S>> branch_node(search_node<S> const& node, int var,
                                                      std::uint64_t& next_id) {
  if (var < 0 || var >= static_cast<int>(node.fix.size()) || node.fix[var] >= 0)
    throw std::logic_error("branch_node: variable unavailable for branching");
  auto make_child = [&](signed char v) {
    search_node<S> c;
    c.id = next_id++;
    c.parent = node.id;
    c.depth = node.depth + 1;
    c.fix = node.fix;
    c.fix[var] = v;
    c.score = node.score;
    c.gap_pair = node.gap_pair;
    c.lex_warm1 = node.lex_warm1;
    c.lex_warm2 = node.lex_warm2;
    return c;
  };
  auto child0 = make_child(0);
  auto child1 = make_child(1);
  return {std::move(child0), std::move(child1)};
}

namespace search_detail {

template <typename S>
class open_set {
 public:
  explicit open_set(node_order order) : m_order(order) {}

  void push(search_node<S>&& nd) { m_nodes.push_back(std::move(nd)); }
  bool empty() const { return m_nodes.empty(); }
  std::size_t size() const { return m_nodes.size(); }

  search_node<S> pop() {
    std::size_t pick = m_nodes.size() - 1;  // depth first: last in
    if (m_order != node_order::depth_first) {
      pick = 0;
      for (std::size_t i = 1; i < m_nodes.size(); ++i) {
        if (m_nodes[i].score > m_nodes[pick].score ||
            (m_nodes[i].score == m_nodes[pick].score && m_nodes[i].id < m_nodes[pick].id))
          pick = i;
      }
    }
    search_node<S> out = std::move(m_nodes[pick]);
    m_nodes.erase(m_nodes.begin() + static_cast<std::ptrdiff_t>(pick));
    return out;
  }

 private:
  node_order m_order;
  std::vector<search_node<S>> m_nodes;
};

template <typename S>
struct search_state {
  instance const& inst;
  strategy strat;
  budget bud;

  incumbent_list<S> incumbents;
  std::vector<local_upper_bound<S>> lubs;
  scalar_cache<S> cache;
  std::vector<ws_cut_record<S>> ws_cuts;
  std::vector<awt_cut_record<S>> awt_cuts;
  run_stats stats;
  open_set<S> open;
  std::uint64_t next_id = 1;

  explicit search_state(instance const& i, strategy s, budget b)
      : inst(i), strat(s), bud(b), open(s.order) {
    lubs = rebuild_lubs(incumbents);
  }

  void insert_incumbent(solution const& sol, bool confirmed) {
    auto out = incumbents.insert(sol);
    point2<S> const img = to_scalar_point<S>(sol.image);
    if (confirmed) incumbents.mark_confirmed(img);
    if (out.inserted || confirmed) lubs = rebuild_lubs(incumbents);
  }
};

// Weighted sum trigger: lambda from the active node's stored largest-gap
// pair; solved in the root node, so the level-set cut is valid everywhere.
template <typename S>
void trigger_ws(search_state<S>& st, search_node<S> const& active, std::uint64_t iter) {
  run_event ev;
  ev.k = run_event::kind::ws_trigger;
  ev.iteration = iter;
  ev.node_id = active.id;
  ev.outcome = 2;  // skipped unless shown otherwise

  std::optional<weight_vector> lambda;
  if (active.gap_pair)
    lambda = derive_lambda<S>(active.gap_pair->first, active.gap_pair->second);
  if (lambda) {
    ev.a = lambda->l1;
    ev.b = lambda->l2;
    auto res = solve_weighted_sum(st.inst, *lambda, st.cache);
    if (res.outcome == scalar_outcome::cache_hit) {
      ev.outcome = 1;
    } else if (res.outcome == scalar_outcome::new_optimum) {
      ev.outcome = 0;
      ++st.stats.ips_solved;
      st.insert_incumbent(res.sol, /*confirmed=*/true);
      st.ws_cuts.push_back(ws_cut_record<S>{*lambda, res.value});
    }
  }
  st.stats.events.push_back(ev);
}

// AWT trigger: largest-area box over adjacent confirmed nondominated points,
// excluding boxes already solved.
template <typename S>
void trigger_awt(search_state<S>& st, search_node<S> const& active, std::uint64_t iter) {
  run_event ev;
  ev.k = run_event::kind::awt_trigger;
  ev.iteration = iter;
  ev.node_id = active.id;
  ev.outcome = 2;

  auto confirmed = st.incumbents.confirmed_points();
  std::optional<awt_params<S>> chosen;
  S best_area{};
  for (std::size_t i = 0; i + 1 < confirmed.size(); ++i) {
    auto params = make_awt_params(confirmed[i], confirmed[i + 1]);
    if (!params) continue;
    if (st.cache.awt.count(awt_cache_key(*params))) continue;
    S const area = (params->corner2.z1 - params->corner1.z1) *
                   (params->corner1.z2 - params->corner2.z2);
    if (!chosen || area > best_area) {
      chosen = std::move(params);
      best_area = area;
    }
  }

  if (chosen) {
    ev.a = scalar_traits<S>::to_int64(chosen->corner1.z1);
    ev.b = scalar_traits<S>::to_int64(chosen->corner2.z1);
    auto res = solve_awt(st.inst, *chosen, st.cache);
    if (res.outcome == scalar_outcome::new_optimum) {
      ev.outcome = 0;
      ++st.stats.ips_solved;
      st.insert_incumbent(res.sol, /*confirmed=*/true);
      if (st.strat.gamma == awt_cut_mode::integrate)
        st.awt_cuts.push_back(awt_cut_record<S>{chosen->level, res.value});
    } else {
      ev.outcome = 1;
    }
  }
  st.stats.events.push_back(ev);
}

enum class explore_outcome : unsigned char { fathomed, branched };

// One node exploration: relaxation, global cuts, incumbent updates from
// integral extreme points, fathoming i-iii, then gap rescore and branching.
// Branching always uses the un-augmented relaxation supports.
template <typename S>
explore_outcome explore(search_state<S>& st, search_node<S>&& node, std::uint64_t iter) {
  using T = scalar_traits<S>;
  ++st.stats.nodes_explored;

  auto fathom = [&](run_event::kind k, std::uint32_t cuts) {
    run_event ev;
    ev.k = k;
    ev.iteration = iter;
    ev.node_id = node.id;
    ev.cuts_applied = cuts;
    st.stats.events.push_back(ev);
    if (k == run_event::kind::fathomed_infeasible) ++st.stats.fathomed_infeasible;
    if (k == run_event::kind::fathomed_optimality) ++st.stats.fathomed_optimality;
    if (k == run_event::kind::fathomed_dominance) ++st.stats.fathomed_dominance;
    return explore_outcome::fathomed;
  };

  auto rel = dichotomic_frontier<S>(st.inst, node.fix,
                                    node.lex_warm1 ? &*node.lex_warm1 : nullptr,
                                    node.lex_warm2 ? &*node.lex_warm2 : nullptr);
  if (!rel) return fathom(run_event::kind::fathomed_infeasible, 0);

  bound_polyline<S> poly = rel->lower_bound;
  std::uint32_t cuts_applied = 0;
  for (auto const& cut : st.ws_cuts) {
    poly = clip_halfspace(poly, T::from_int(cut.lambda.l1), T::from_int(cut.lambda.l2),
                          cut.value);
    ++cuts_applied;
  }
  if (st.strat.gamma == awt_cut_mode::integrate) {
    for (auto const& cut : st.awt_cuts) {
      poly = clip_awt_levelset(poly, cut.level, cut.value);
      ++cuts_applied;
    }
  }

  for (auto const& sol : integer_extreme_points(st.inst, rel->support))
    st.insert_incumbent(sol, /*confirmed=*/false);

  if (poly.verts.size() == 1 && st.incumbents.contains(poly.front()))
    return fathom(run_event::kind::fathomed_optimality, cuts_applied);

  bool const all_fixed = [&] {
    for (int j = 0; j < st.inst.n; ++j)
      if (node.fix[j] < 0) return false;
    return true;
  }();
  if (all_fixed)  // subproblem fully enumerated; its only point is dominated
    return fathom(run_event::kind::fathomed_dominance, cuts_applied);

  if (fathom_by_dominance(poly, st.lubs))
    return fathom(run_event::kind::fathomed_dominance, cuts_applied);

  auto gr = gap_report(poly, st.incumbents);
  node.score = st.strat.order == node_order::max_thg ? gr.thg : gr.lhg;
  node.gap_pair = gr.argmax;
  node.lex_warm1 = std::move(rel->lex_basis[0]);
  node.lex_warm2 = std::move(rel->lex_basis[1]);

  int branch_var;
  if (auto mf = most_fractional(rel->support)) {
    branch_var = *mf;
  } else {
    branch_var = -1;  // integral supports but not fathomable: smallest unfixed index
    for (int j = 0; j < st.inst.n; ++j)
      if (node.fix[j] < 0) {
        branch_var = j;
        break;
      }
  }

  run_event ev;
  ev.k = run_event::kind::branched;
  ev.iteration = iter;
  ev.node_id = node.id;
  ev.a = branch_var;
  ev.cuts_applied = cuts_applied;
  st.stats.events.push_back(ev);
  ++st.stats.branched;

  auto [child0, child1] = branch_node(node, branch_var, st.next_id);
  // x = 1 first onto the stack so depth-first explores the 0-branch first.
  st.open.push(std::move(child1));
  st.open.push(std::move(child0));
  return explore_outcome::branched;
}

}  // namespace search_detail

// Branch and bound over the bi-objective problem. Returns the minimal
// complete set (one preimage per nondominated point) in the instance's
// original sense; the strategy affects only statistics, never the frontier.
template <typename S = rat>
solve_result<S> solve(instance const& inst, strategy const& strat, budget const& bud = {}) {
  using clock = std::chrono::steady_clock;
  auto const t0 = clock::now();

  search_detail::search_state<S> st(inst, strat, bud);

  search_node<S> root;
  root.id = st.next_id++;
  root.fix.assign(inst.n, -1);
  root.score = S(0);
  st.open.push(std::move(root));

  std::uint64_t iter = 0;
  bool first = true;
  while (!st.open.empty()) {
    if (st.bud.max_nodes && st.stats.nodes_explored >= *st.bud.max_nodes) {
      st.stats.complete = false;
      break;
    }
    if (st.bud.max_seconds) {
      double const secs = std::chrono::duration<double>(clock::now() - t0).count();
      if (secs >= *st.bud.max_seconds) {
        st.stats.complete = false;
        break;
      }
    }
    ++iter;
    st.stats.iterations = iter;

    auto node = st.open.pop();

    switch (schedule_trigger(iter, strat, inst, &st.stats.schedule_fallback)) {
      case trigger_kind::ws: search_detail::trigger_ws(st, node, iter); break;
      case trigger_kind::awt: search_detail::trigger_awt(st, node, iter); break;
      case trigger_kind::none: break;
    }

    auto outcome = search_detail::explore(st, std::move(node), iter);
    if (first) {
      first = false;
      if (outcome == search_detail::explore_outcome::fathomed &&
          st.stats.fathomed_infeasible == 1)
        st.stats.root_infeasible = true;
    }
  }

  solve_result<S> res;
  res.stats = std::move(st.stats);
  res.ws_cuts = std::move(st.ws_cuts);
  res.awt_cuts = std::move(st.awt_cuts);
  for (auto const& e : st.incumbents.points())
    res.frontier.emplace_back(to_original_sense(inst, e.pre.image), e.pre);
  std::sort(res.frontier.begin(), res.frontier.end(),
            [](auto const& a, auto const& b) { return a.first.z1 < b.first.z1; });
  res.stats.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return res;
}

// Exact solve on the fixed-width fast rational, falling back to the
// arbitrary-precision one if an intermediate overflows 256 bits (both are
// exact, so the result is identical either way).
inline solve_result<rat> solve_exact(instance const& inst, strategy const& strat,
                                     budget const& bud = {}) {
  auto widen = [](solve_result<rat256>&& r) {
    solve_result<rat> out;
    out.frontier = std::move(r.frontier);
    out.stats = std::move(r.stats);
    out.ws_cuts.reserve(r.ws_cuts.size());
    for (auto const& c : r.ws_cuts)
      out.ws_cuts.push_back(ws_cut_record<rat>{c.lambda, to_rat(c.value)});
    out.awt_cuts.reserve(r.awt_cuts.size());
    for (auto const& c : r.awt_cuts) {
      awt_levelset<rat> level;
      level.w1 = to_rat(c.level.w1);
      level.w2 = to_rat(c.level.w2);
      level.tau = to_rat(c.level.tau);
      level.s = point2<rat>{to_rat(c.level.s.z1), to_rat(c.level.s.z2)};
      out.awt_cuts.push_back(awt_cut_record<rat>{level, to_rat(c.value)});
    }
    return out;
  };
  try {
    return widen(solve<rat256>(inst, strat, bud));
  } catch (std::overflow_error const&) {
    return solve<rat>(inst, strat, bud);
  }
}

}  // namespace mobb

#endif  // MOBB_SEARCH_HPP_
