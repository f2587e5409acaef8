#include "mobb/generators.hpp"
#include "mobb/oracle.hpp"
#include "mobb/scalarize.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mobb;

namespace {

point2<rat> rp(std::int64_t a, std::int64_t b) { return point2<rat>{rat(a), rat(b)}; }

// n selector variables, exactly-one row, image columns as given (min-sense).
instance selector_instance(std::vector<ipoint2> const& images) {
  instance inst;
  inst.n = static_cast<int>(images.size());
  inst.obj[0].resize(inst.n);
  inst.obj[1].resize(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    inst.obj[0][j] = images[j].z1;
    inst.obj[1][j] = images[j].z2;
  }
  constraint_row row;
  row.rel = relation::eq;
  row.rhs = 1;
  row.coeffs.assign(inst.n, 1);
  inst.rows.push_back(std::move(row));
  return inst;
}

std::int64_t brute_force_min(instance const& inst, std::vector<rat> const& obj) {
  bool first = true;
  rat best;
  for (int mask = 0; mask < (1 << inst.n); ++mask) {
    std::vector<std::uint8_t> x(inst.n);
    for (int j = 0; j < inst.n; ++j) x[j] = (mask >> j) & 1;
    if (!is_feasible(inst, x)) continue;
    rat v(0);
    for (int j = 0; j < inst.n; ++j)
      if (x[j]) v += obj[j];
    if (first || v < best) best = v;
    first = false;
  }
  REQUIRE_FALSE(first);
  return scalar_traits<rat>::to_int64(best);
}

}  // namespace

TEST_CASE("ip_solve basics", "[scalarize]") {
  auto kn = gen_knapsack(8, 1, 2);

  auto zero = ip_solve<rat>(std::vector<rat>(8, rat(0)), kn);
  REQUIRE(zero);
  CHECK(zero->value == 0);
  CHECK(is_feasible(kn, zero->sol.assignment));

  // contradictory extra rows: x1 <= 0 and x1 >= 1
  ip_extras<rat> ex;
  typename lp_problem<rat>::lrow r1;
  r1.rel = relation::le;
  r1.coeffs.assign(8, rat(0));
  r1.coeffs[0] = rat(1);
  r1.rhs = rat(0);
  auto r2 = r1;
  r2.coeffs[0] = rat(-1);
  r2.rhs = rat(-1);
  ex.extra_rows = {r1, r2};
  CHECK_FALSE(ip_solve<rat>(std::vector<rat>(8, rat(0)), kn, ex).has_value());
}

TEST_CASE("ip_solve matches brute force on knapsack objectives", "[scalarize][property]") {
  auto kn = gen_knapsack(12, 1, 3);
  std::vector<rat> obj(12);
  for (int j = 0; j < 12; ++j) obj[j] = rat(kn.obj[0][j]);  // min-sense first objective
  auto opt = ip_solve<rat>(obj, kn);
  REQUIRE(opt);
  CHECK(scalar_traits<rat>::to_int64(opt->value) == brute_force_min(kn, obj));
  CHECK(is_feasible(kn, opt->sol.assignment));

  for (std::uint64_t seed = 4; seed <= 8; ++seed) {
    auto inst = gen_knapsack(10, 2, seed);
    std::vector<rat> o(10);
    for (int j = 0; j < 10; ++j) o[j] = rat(2 * inst.obj[0][j] + 3 * inst.obj[1][j]);
    auto r = ip_solve<rat>(o, inst);
    REQUIRE(r);
    CHECK(scalar_traits<rat>::to_int64(r->value) == brute_force_min(inst, o));
  }
}

TEST_CASE("derive_lambda", "[scalarize]") {
  auto l1 = derive_lambda<rat>(rp(2, 6), rp(3, 5));
  REQUIRE(l1);
  CHECK((l1->l1 == 1 && l1->l2 == 1));

  auto l2 = derive_lambda<rat>(rp(1, 7), rp(7, 1));
  REQUIRE(l2);
  CHECK((l2->l1 == 1 && l2->l2 == 1));  // (6,6) reduced

  auto l3 = derive_lambda<rat>(rp(2, 6), rp(6, 1));
  REQUIRE(l3);
  CHECK((l3->l1 == 5 && l3->l2 == 4));

  CHECK_FALSE(derive_lambda<rat>(rp(2, 6), rp(2, 4)).has_value());  // shared z1
  CHECK_FALSE(derive_lambda<rat>(rp(2, 6), rp(4, 6)).has_value());  // shared z2
}

TEST_CASE("solve_weighted_sum and the cache", "[scalarize]") {
  auto inst = selector_instance({{2, 6}, {3, 3}, {6, 1}});
  scalar_cache<rat> cache;

  auto r = solve_weighted_sum(inst, weight_vector{1, 1}, cache);
  REQUIRE(r.outcome == scalar_outcome::new_optimum);
  CHECK(r.value == 6);
  CHECK(r.sol.image == ipoint2{3, 3});

  auto hit = solve_weighted_sum(inst, weight_vector{1, 1}, cache);
  CHECK(hit.outcome == scalar_outcome::cache_hit);
  CHECK(hit.value == 6);

  // coprime normalization: (2,2) is the same key
  auto hit2 = solve_weighted_sum(inst, weight_vector{2, 2}, cache);
  CHECK(hit2.outcome == scalar_outcome::cache_hit);

  auto skipped = solve_weighted_sum(inst, weight_vector{0, 1}, cache);
  CHECK(skipped.outcome == scalar_outcome::skipped);
}

TEST_CASE("awt parameter construction", "[scalarize]") {
  auto p = make_awt_params(rp(1, 7), rp(7, 1));
  REQUIRE(p);
  CHECK(p->level.s == rp(1, 1));
  CHECK(p->level.w1 == rat(1, 2));
  CHECK(p->level.w2 == rat(1, 2));
  CHECK(p->level.tau == rat(1, 288));

  auto q = make_awt_params(rp(0, 2), rp(1, 0));
  REQUIRE(q);
  CHECK(q->level.s == rp(0, 0));
  CHECK(q->level.w1 == rat(2, 3));
  CHECK(q->level.w2 == rat(1, 3));

  CHECK_FALSE(make_awt_params(rp(0, 1), rp(1, 1)).has_value());  // empty box
}

TEST_CASE("solve_awt finds the unsupported point of the figure", "[scalarize]") {
  auto inst = selector_instance({{1, 7}, {6, 4}, {7, 1}});
  scalar_cache<rat> cache;
  auto p = make_awt_params(rp(1, 7), rp(7, 1));
  REQUIRE(p);

  auto r = solve_awt(inst, *p, cache);
  REQUIRE(r.outcome == scalar_outcome::new_optimum);
  CHECK(r.sol.image == ipoint2{6, 4});
  CHECK(r.value == p->level.value(rp(6, 4)));

  auto hit = solve_awt(inst, *p, cache);
  CHECK(hit.outcome == scalar_outcome::cache_hit);

  // single feasible point: that point comes back
  auto single = selector_instance({{4, 4}});
  scalar_cache<rat> cache2;
  auto ps = make_awt_params(rp(1, 7), rp(7, 1));
  auto rs = solve_awt(single, *ps, cache2);
  REQUIRE(rs.outcome == scalar_outcome::new_optimum);
  CHECK(rs.sol.image == ipoint2{4, 4});
}

TEST_CASE("weighted-sum validity and efficiency against the oracle",
          "[scalarize][property]") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto inst = gen_knapsack(11, 1, seed);
    auto oracle = brute_force_frontier(inst);
    scalar_cache<rat> cache;
    for (auto lambda : {weight_vector{1, 1}, weight_vector{3, 1}, weight_vector{1, 4},
                        weight_vector{7, 5}}) {
      auto r = solve_weighted_sum(inst, lambda, cache);
      REQUIRE(r.outcome == scalar_outcome::new_optimum);
      // validity over all feasible points
      for (int mask = 0; mask < (1 << 11); ++mask) {
        std::vector<std::uint8_t> x(11);
        for (int j = 0; j < 11; ++j) x[j] = (mask >> j) & 1;
        if (!is_feasible(inst, x)) continue;
        auto img = evaluate(inst, x);
        CHECK(rat(lambda.l1 * img.z1 + lambda.l2 * img.z2) >= r.value);
      }
      // efficiency: the optimum's original-sense image is on the frontier
      auto img = to_original_sense(inst, r.sol.image);
      CHECK(std::find(oracle.frontier.begin(), oracle.frontier.end(), img) !=
            oracle.frontier.end());
    }
  }
}

TEST_CASE("awt efficiency and level-set validity against the oracle",
          "[scalarize][property]") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto inst = gen_knapsack(11, 1, seed);
    auto oracle = brute_force_frontier(inst);
    REQUIRE(oracle.frontier.size() >= 2);

    // box between the two outermost frontier points (min-sense orientation)
    auto to_min = [&](ipoint2 p) { return rp(-p.z1, -p.z2); };
    auto z1 = to_min(oracle.frontier.back());
    auto z2 = to_min(oracle.frontier.front());
    if (!(z1.z1 < z2.z1)) std::swap(z1, z2);
    auto params = make_awt_params(z1, z2);
    REQUIRE(params);

    scalar_cache<rat> cache;
    auto r = solve_awt(inst, *params, cache);
    REQUIRE(r.outcome == scalar_outcome::new_optimum);

    auto img = to_original_sense(inst, r.sol.image);
    CHECK(std::find(oracle.frontier.begin(), oracle.frontier.end(), img) !=
          oracle.frontier.end());

    // level-set validity: no feasible point below the optimal level
    for (int mask = 0; mask < (1 << 11); ++mask) {
      std::vector<std::uint8_t> x(11);
      for (int j = 0; j < 11; ++j) x[j] = (mask >> j) & 1;
      if (!is_feasible(inst, x)) continue;
      auto z = to_scalar_point<rat>(evaluate(inst, x));
      CHECK(params->level.value(z) >= r.value);
    }

    // cache soundness: stored value equals a fresh re-solve
    scalar_cache<rat> fresh;
    auto again = solve_awt(inst, *params, fresh);
    CHECK(again.value == r.value);
  }
}
