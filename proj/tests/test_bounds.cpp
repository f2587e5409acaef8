#include "mobb/bounds.hpp"
#include "mobb/generators.hpp"
#include "mobb/oracle.hpp"
#include "mobb/relax.hpp"
#include "mobb/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mobb;

namespace {

point2<rat> rp(std::int64_t a, std::int64_t b) { return point2<rat>{rat(a), rat(b)}; }

solution fake_solution(std::int64_t z1, std::int64_t z2) {
  solution s;
  s.image = ipoint2{z1, z2};
  return s;
}

// The running example of the node-selection figure: lower bound polyline
// (1/2,7),(3/2,5/2),(7/2,1),(7,1/2) with incumbents (2,6),(3,5),(5,3),(6,1).
bound_polyline<rat> figure_polyline() {
  bound_polyline<rat> L;
  L.verts = {{point2<rat>{rat(1, 2), rat(7)}, vertex_origin::relaxation},
             {point2<rat>{rat(3, 2), rat(5, 2)}, vertex_origin::relaxation},
             {point2<rat>{rat(7, 2), rat(1)}, vertex_origin::relaxation},
             {point2<rat>{rat(7), rat(1, 2)}, vertex_origin::relaxation}};
  return L;
}

incumbent_list<rat> figure_incumbents() {
  incumbent_list<rat> U;
  U.insert(fake_solution(2, 6));
  U.insert(fake_solution(3, 5));
  U.insert(fake_solution(5, 3));
  U.insert(fake_solution(6, 1));
  return U;
}

}  // namespace

TEST_CASE("incumbent insert implements the disjoint union update", "[bounds]") {
  auto U = figure_incumbents();
  auto out = U.insert(fake_solution(3, 3));
  REQUIRE(out.inserted);
  REQUIRE(out.removed.size() == 2);
  CHECK(out.removed[0] == rp(3, 5));
  CHECK(out.removed[1] == rp(5, 3));
  REQUIRE(U.size() == 3);
  CHECK(U.points()[0].image == rp(2, 6));
  CHECK(U.points()[1].image == rp(3, 3));
  CHECK(U.points()[2].image == rp(6, 1));

  // equal image counts as dominated
  auto dup = U.insert(fake_solution(3, 3));
  CHECK_FALSE(dup.inserted);
  CHECK(U.size() == 3);

  incumbent_list<rat> empty;
  auto first = empty.insert(fake_solution(4, 4));
  CHECK(first.inserted);
  CHECK(first.removed.empty());
}

TEST_CASE("rebuild_lubs produces interior corners plus sentinels", "[bounds]") {
  auto U = figure_incumbents();
  auto lubs = rebuild_lubs(U);
  REQUIRE(lubs.size() == 5);
  CHECK((lubs[0].inf2 && lubs[0].z1 == 2));
  CHECK((lubs[1].z1 == 3 && lubs[1].z2 == 6));
  CHECK((lubs[2].z1 == 5 && lubs[2].z2 == 5));
  CHECK((lubs[3].z1 == 6 && lubs[3].z2 == 3));
  CHECK((lubs[4].inf1 && lubs[4].z2 == 1));

  U.insert(fake_solution(3, 3));
  auto lubs2 = rebuild_lubs(U);
  REQUIRE(lubs2.size() == 4);
  CHECK((lubs2[1].z1 == 3 && lubs2[1].z2 == 6));
  CHECK((lubs2[2].z1 == 6 && lubs2[2].z2 == 3));

  incumbent_list<rat> empty;
  auto lubs3 = rebuild_lubs(empty);
  REQUIRE(lubs3.size() == 1);
  CHECK((lubs3[0].inf1 && lubs3[0].inf2));
}

TEST_CASE("points_above selects K", "[bounds]") {
  auto U = figure_incumbents();

  bound_polyline<rat> origin;
  origin.verts = {{rp(0, 0), vertex_origin::relaxation}};
  CHECK(points_above(U, origin).size() == 4);

  bound_polyline<rat> high;
  high.verts = {{rp(10, 10), vertex_origin::relaxation}};
  CHECK(points_above(U, high).empty());

  CHECK(points_above(U, figure_polyline()).size() == 4);
}

TEST_CASE("fathom_by_dominance", "[bounds]") {
  incumbent_list<rat> empty;
  CHECK_FALSE(fathom_by_dominance(figure_polyline(), rebuild_lubs(empty)));

  // single-vertex lower bound equal to the only incumbent image
  incumbent_list<rat> one;
  one.insert(fake_solution(3, 3));
  bound_polyline<rat> L;
  L.verts = {{rp(3, 3), vertex_origin::relaxation}};
  CHECK(fathom_by_dominance(L, rebuild_lubs(one)));

  // figure configuration: lub (5,5) is strictly above the polyline
  CHECK_FALSE(fathom_by_dominance(figure_polyline(), rebuild_lubs(figure_incumbents())));
}

TEST_CASE("clip_halfspace geometry", "[bounds]") {
  auto L = figure_polyline();
  auto cut = clip_halfspace(L, rat(1), rat(1), rat(6));
  REQUIRE(cut.verts.size() == 4);
  CHECK(cut.verts[0].p == (point2<rat>{rat(1, 2), rat(7)}));
  CHECK(cut.verts[1].p == (point2<rat>{rat(13, 14), rat(71, 14)}));
  CHECK(cut.verts[2].p == (point2<rat>{rat(21, 4), rat(3, 4)}));
  CHECK(cut.verts[3].p == (point2<rat>{rat(7), rat(1, 2)}));
  CHECK(cut.verts[1].origin == vertex_origin::ws_cut);
  CHECK(cut.verts[2].origin == vertex_origin::ws_cut);
  CHECK(is_valid_staircase(cut));
  CHECK(cut.convex);
  // coordinates match the figure's decimals
  CHECK_THAT(scalar_traits<rat>::to_double(cut.verts[1].p.z1),
             Catch::Matchers::WithinAbs(0.9286, 1e-3));
  CHECK_THAT(scalar_traits<rat>::to_double(cut.verts[1].p.z2),
             Catch::Matchers::WithinAbs(5.0714, 1e-3));
  CHECK_THAT(scalar_traits<rat>::to_double(cut.verts[2].p.z1),
             Catch::Matchers::WithinAbs(5.25, 1e-3));
  CHECK_THAT(scalar_traits<rat>::to_double(cut.verts[2].p.z2),
             Catch::Matchers::WithinAbs(0.75, 1e-3));

  // a redundant cut leaves the polyline unchanged
  auto same = clip_halfspace(L, rat(1), rat(1), rat(2));
  REQUIRE(same.verts.size() == L.verts.size());
  for (std::size_t i = 0; i < L.verts.size(); ++i)
    CHECK(same.verts[i].p == L.verts[i].p);

  // single vertex strictly below the line: the cone boundary segment remains
  bound_polyline<rat> v;
  v.verts = {{rp(3, 3), vertex_origin::relaxation}};
  auto seg = clip_halfspace(v, rat(1), rat(1), rat(8));
  REQUIRE(seg.verts.size() == 2);
  CHECK(seg.verts[0].p == rp(3, 5));
  CHECK(seg.verts[1].p == rp(5, 3));
}

TEST_CASE("clip_awt_levelset reproduces the Tchebycheff cut figure", "[bounds]") {
  // Figure geometry: s=(1,1), w=(1/2,1/2), tau=1/10, level value 33/10
  // (the norm of the unsupported point (6,4)).
  bound_polyline<rat> L;
  L.verts = {{rp(1, 7), vertex_origin::relaxation}, {rp(7, 1), vertex_origin::relaxation}};
  awt_levelset<rat> ls;
  ls.w1 = rat(1, 2);
  ls.w2 = rat(1, 2);
  ls.tau = rat(1, 10);
  ls.s = rp(1, 1);
  CHECK(ls.value(rp(6, 4)) == rat(33, 10));
  CHECK(ls.value(rp(1, 7)) == rat(18, 5));
  CHECK(ls.value(rp(7, 1)) == rat(18, 5));

  auto cut = clip_awt_levelset(L, ls, rat(33, 10));
  REQUIRE(cut.verts.size() == 5);
  CHECK(cut.verts[0].p == rp(1, 7));
  CHECK(cut.verts[1].p == (point2<rat>{rat(8, 5), rat(32, 5)}));
  CHECK(cut.verts[2].p == (point2<rat>{rat(40, 7), rat(40, 7)}));  // the kink
  CHECK(cut.verts[3].p == (point2<rat>{rat(32, 5), rat(8, 5)}));
  CHECK(cut.verts[4].p == rp(7, 1));
  CHECK_FALSE(cut.convex);
  CHECK(is_valid_staircase(cut));
  // the figure's drawn coordinates
  CHECK_THAT(scalar_traits<rat>::to_double(cut.verts[1].p.z1),
             Catch::Matchers::WithinAbs(1.599, 2e-3));
  CHECK_THAT(scalar_traits<rat>::to_double(cut.verts[2].p.z1),
             Catch::Matchers::WithinAbs(5.72, 1e-2));
  CHECK_THAT(scalar_traits<rat>::to_double(cut.verts[3].p.z2),
             Catch::Matchers::WithinAbs(1.599, 2e-3));

  // degenerate level value: nothing excluded
  auto same = clip_awt_levelset(L, ls, rat(0));
  CHECK(same.verts.size() == 2);

  // single vertex strictly inside the level set
  bound_polyline<rat> v;
  v.verts = {{rp(2, 2), vertex_origin::relaxation}};
  CHECK(ls.value(rp(2, 2)) == rat(7, 10));
  auto cone = clip_awt_levelset(v, ls, rat(1));
  REQUIRE(cone.verts.size() == 3);
  CHECK(cone.verts[0].p == (point2<rat>{rat(2), rat(5, 2)}));
  CHECK(cone.verts[1].p == (point2<rat>{rat(17, 7), rat(17, 7)}));
  CHECK(cone.verts[2].p == (point2<rat>{rat(5, 2), rat(2)}));
}

TEST_CASE("gap_report matches the hand-computed figure values", "[bounds]") {
  auto L = figure_polyline();
  auto U = figure_incumbents();
  auto rep = gap_report(L, U);

  CHECK(rep.thg == rat(4433, 288));
  CHECK(rep.lhg == rat(4307, 504));
  REQUIRE(rep.argmax);
  CHECK(rep.argmax->first == rp(3, 5));
  CHECK(rep.argmax->second == rp(5, 3));

  CHECK_THAT(scalar_traits<rat>::to_double(rep.thg),
             Catch::Matchers::WithinAbs(15.3924, 1e-3));
  CHECK_THAT(scalar_traits<rat>::to_double(rep.lhg),
             Catch::Matchers::WithinAbs(8.5457, 1e-3));

  // per-lub gaps
  CHECK(hv_gap(L, rp(3, 6)) == rat(1517, 288));
  CHECK(hv_gap(L, rp(5, 5)) == rat(4307, 504));
  CHECK(hv_gap(L, rp(6, 3)) == rat(913, 168));
}

TEST_CASE("gap_report degenerate K uses the triangle proxy", "[bounds]") {
  auto L = figure_polyline();
  incumbent_list<rat> empty;
  auto rep = gap_report(L, empty);
  CHECK(rep.thg == (rat(7) - rat(1, 2)) * (rat(7) - rat(1, 2)) / 2);
  CHECK(rep.lhg == rep.thg);
  CHECK_FALSE(rep.argmax);

  incumbent_list<rat> one;
  one.insert(fake_solution(4, 4));
  auto rep1 = gap_report(L, one);
  CHECK(rep1.thg == rep.thg);
}

TEST_CASE("incumbent list equals a naive nondominance filter", "[bounds][property]") {
  rng64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    incumbent_list<rat> U;
    std::vector<ipoint2> all;
    for (int i = 0; i < 60; ++i) {
      ipoint2 img{rng.uniform(0, 20), rng.uniform(0, 20)};
      all.push_back(img);
      U.insert(fake_solution(img.z1, img.z2));
    }
    // naive filter
    std::vector<ipoint2> naive;
    for (auto const& p : all) {
      bool dominated = false;
      for (auto const& q : all)
        if ((q.z1 < p.z1 && q.z2 <= p.z2) || (q.z1 <= p.z1 && q.z2 < p.z2)) {
          dominated = true;
          break;
        }
      if (!dominated) naive.push_back(p);
    }
    std::sort(naive.begin(), naive.end(),
              [](ipoint2 const& a, ipoint2 const& b) { return a.z1 < b.z1; });
    naive.erase(std::unique(naive.begin(), naive.end()), naive.end());
    REQUIRE(U.size() == naive.size());
    for (std::size_t i = 0; i < naive.size(); ++i)
      CHECK(U.points()[i].image == to_scalar_point<rat>(naive[i]));
  }
}

TEST_CASE("rebuild_lubs is a function of the point set", "[bounds][property]") {
  std::vector<ipoint2> pts{{2, 9}, {4, 6}, {7, 4}, {9, 1}};
  incumbent_list<rat> a, b;
  for (auto const& p : pts) a.insert(fake_solution(p.z1, p.z2));
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) b.insert(fake_solution(it->z1, it->z2));
  auto la = rebuild_lubs(a);
  auto lb = rebuild_lubs(b);
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    CHECK(la[i].z1 == lb[i].z1);
    CHECK(la[i].z2 == lb[i].z2);
    CHECK(la[i].inf1 == lb[i].inf1);
    CHECK(la[i].inf2 == lb[i].inf2);
  }
}

TEST_CASE("fathoming is monotone under incumbent inserts", "[bounds][property]") {
  rng64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    bound_polyline<rat> L;
    std::int64_t x = rng.uniform(0, 3), y = rng.uniform(12, 16);
    for (int k = 0; k < 4; ++k) {
      L.verts.push_back({rp(x, y), vertex_origin::relaxation});
      x += rng.uniform(1, 3);
      y -= rng.uniform(1, 3);
    }
    incumbent_list<rat> U;
    for (int i = 0; i < 6; ++i) U.insert(fake_solution(rng.uniform(0, 14), rng.uniform(0, 14)));
    bool const before = fathom_by_dominance(L, rebuild_lubs(U));
    U.insert(fake_solution(rng.uniform(0, 14), rng.uniform(0, 14)));
    bool const after = fathom_by_dominance(L, rebuild_lubs(U));
    if (before) CHECK(after);
  }
}

TEST_CASE("clips preserve monotonicity and never cut feasible images", "[bounds][property]") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto inst = gen_knapsack(10, 1, seed);
    fixing_vector free(inst.n, -1);
    auto rel = dichotomic_frontier<rat>(inst, free);
    REQUIRE(rel);
    auto const& L0 = rel->lower_bound;

    // collect all feasible images (min-sense)
    std::vector<point2<rat>> images;
    for (int mask = 0; mask < (1 << inst.n); ++mask) {
      std::vector<std::uint8_t> xx(inst.n);
      for (int j = 0; j < inst.n; ++j) xx[j] = (mask >> j) & 1;
      if (is_feasible(inst, xx)) images.push_back(to_scalar_point<rat>(evaluate(inst, xx)));
    }

    // a valid weighted-sum cut: lambda (1,2), c = exact IP minimum
    rat c;
    bool first_img = true;
    for (auto const& img : images) {
      rat v = img.z1 + 2 * img.z2;
      if (first_img || v < c) c = v;
      first_img = false;
    }
    auto Lws = clip_halfspace(L0, rat(1), rat(2), c);
    CHECK(is_valid_staircase(Lws));
    for (auto const& img : images) CHECK(in_upper_region(Lws, img));

    // a valid AWT cut around the two lexicographic frontier corners
    awt_levelset<rat> ls;
    ls.w1 = rat(1, 2);
    ls.w2 = rat(1, 2);
    ls.tau = rat(1, 20);
    ls.s = point2<rat>{L0.front().z1, L0.back().z2};
    rat vstar;
    first_img = true;
    for (auto const& img : images) {
      rat v = ls.value(img);
      if (first_img || v < vstar) vstar = v;
      first_img = false;
    }
    auto Lawt = clip_awt_levelset(Lws, ls, vstar);
    CHECK(is_valid_staircase(Lawt));
    for (auto const& img : images) CHECK(in_upper_region(Lawt, img));
  }
}

TEST_CASE("shrinking a lub toward the polyline never increases its gap", "[bounds][property]") {
  auto L = figure_polyline();
  rng64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    rat z1(rng.uniform(1, 7));
    rat z2(rng.uniform(1, 7));
    point2<rat> lu{z1, z2};
    if (!in_upper_region(L, lu)) continue;
    auto g0 = hv_gap(L, lu);
    point2<rat> closer{lu.z1, lu.z2 - (lu.z2 - floor_at(L, lu.z1)) / 2};
    auto g1 = hv_gap(L, closer);
    CHECK(g1 <= g0);
    point2<rat> closer1{lu.z1 - (lu.z1 - column_at(L, lu.z2)) / 2, lu.z2};
    if (in_upper_region(L, closer1)) CHECK(hv_gap(L, closer1) <= g0);
  }
}
