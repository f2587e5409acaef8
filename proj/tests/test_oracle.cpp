#include "mobb/generators.hpp"
#include "mobb/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mobb;

TEST_CASE("oracle on the three-item knapsack", "[oracle]") {
  // max c1=(3,2,1), c2=(1,2,3), one unit-weight row with capacity 1:
  // feasible images (0,0),(3,1),(2,2),(1,3); the three nonzero picks are
  // mutually nondominated.
  instance inst;
  inst.n = 3;
  inst.sense = objective_sense::max;
  inst.obj = {std::vector<std::int64_t>{-3, -2, -1}, std::vector<std::int64_t>{-1, -2, -3}};
  inst.rows = {{{1, 1, 1}, relation::le, 1}};

  auto res = brute_force_frontier(inst);
  REQUIRE(res.frontier.size() == 3);
  CHECK(res.frontier[0] == ipoint2{1, 3});
  CHECK(res.frontier[1] == ipoint2{2, 2});
  CHECK(res.frontier[2] == ipoint2{3, 1});
  CHECK(res.enumerated == 8);
}

TEST_CASE("oracle edge cases", "[oracle]") {
  instance none;
  none.n = 2;
  none.obj = {std::vector<std::int64_t>{1, 1}, std::vector<std::int64_t>{1, 1}};
  none.rows = {{{1, 1}, relation::eq, 3}};  // no 0/1 point sums to 3
  CHECK(brute_force_frontier(none).frontier.empty());

  instance same;
  same.n = 3;
  same.obj = {std::vector<std::int64_t>{-1, -2, -4}, std::vector<std::int64_t>{-1, -2, -4}};
  CHECK(brute_force_frontier(same).frontier.size() == 1);

  instance big;
  big.n = 30;
  big.obj = {std::vector<std::int64_t>(30, 1), std::vector<std::int64_t>(30, 1)};
  CHECK_THROWS_AS(brute_force_frontier(big), oracle_guard_error);
}

TEST_CASE("class-aware oracle agrees with plain enumeration", "[oracle]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto a = gen_assignment(3, seed);
    auto fast = brute_force_frontier(a).frontier;
    instance generic = a;
    generic.tag = class_tag{};
    CHECK(fast == brute_force_frontier(generic).frontier);
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto f = gen_facility_location(4, 2, seed);
    auto fast = brute_force_frontier(f).frontier;
    instance generic = f;
    generic.tag = class_tag{};
    CHECK(fast == brute_force_frontier(generic).frontier);
  }
}

TEST_CASE("oracle frontier is mutually nondominated and complete", "[oracle]") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto inst = gen_knapsack(10, 2, seed);
    auto fr = brute_force_frontier(inst).frontier;
    for (std::size_t i = 0; i < fr.size(); ++i)
      for (std::size_t j = 0; j < fr.size(); ++j)
        if (i != j) {
          // max-sense output: dominance means >= both coordinates
          bool dom = fr[i].z1 >= fr[j].z1 && fr[i].z2 >= fr[j].z2;
          CHECK_FALSE(dom);
        }
    // every feasible image is weakly dominated by some frontier point
    for (int mask = 0; mask < (1 << 10); ++mask) {
      std::vector<std::uint8_t> x(10);
      for (int j = 0; j < 10; ++j) x[j] = (mask >> j) & 1;
      if (!is_feasible(inst, x)) continue;
      auto img = to_original_sense(inst, evaluate(inst, x));
      bool covered = false;
      for (auto const& p : fr)
        if (p.z1 >= img.z1 && p.z2 >= img.z2) {
          covered = true;
          break;
        }
      CHECK(covered);
    }
  }
}
