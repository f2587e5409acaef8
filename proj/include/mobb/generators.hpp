#ifndef MOBB_GENERATORS_HPP_
#define MOBB_GENERATORS_HPP_

#include "mobb/instance.hpp"
#include "mobb/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mobb {

// Multidimensional knapsack, maximization. Draw order: c1[0..n), c2[0..n),
// w[0..n), then per side constraint j = 1..m-1: v_j[0..n), r_j.
inline instance gen_knapsack(int n, int m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_knapsack: n must be >= 1");
  if (m < 1 || m > 3) throw std::invalid_argument("gen_knapsack: m must be in {1,2,3}");
  rng64 rng(seed);

  instance inst;
  inst.n = n;
  inst.sense = objective_sense::max;
  inst.tag = class_tag{problem_class::knapsack, m, 0, 0};
  inst.seed = seed;

  for (int k = 0; k < 2; ++k) {
    inst.obj[k].resize(n);
    for (int j = 0; j < n; ++j) inst.obj[k][j] = -rng.uniform(50, 100);  // stored min-sense
  }

  constraint_row cap;
  cap.rel = relation::le;
  cap.rhs = 5ll * n;
  cap.coeffs.resize(n);
  for (int j = 0; j < n; ++j) cap.coeffs[j] = rng.uniform(5, 15);
  inst.rows.push_back(std::move(cap));

  for (int j = 1; j < m; ++j) {
    constraint_row side;
    side.rel = relation::le;
    side.coeffs.resize(n);
    for (int i = 0; i < n; ++i) side.coeffs[i] = rng.uniform(5, 15);
    std::int64_t r = rng.uniform(5, 15);
    side.rhs = r * n / 2;
    inst.rows.push_back(std::move(side));
  }
  return inst;
}

// Assignment problem, maximization, n = l*l variables x_ij stored i-major.
// Draw order: c1[0..n), c2[0..n).
inline instance gen_assignment(int l, std::uint64_t seed) {
  if (l < 2) throw std::invalid_argument("gen_assignment: l must be >= 2");
  rng64 rng(seed);

  int const n = l * l;
  instance inst;
  inst.n = n;
  inst.sense = objective_sense::max;
  inst.tag = class_tag{problem_class::assignment, 0, l, 0};
  inst.seed = seed;

  for (int k = 0; k < 2; ++k) {
    inst.obj[k].resize(n);
    for (int j = 0; j < n; ++j) inst.obj[k][j] = -rng.uniform(50, 100);
  }

  for (int i = 0; i < l; ++i) {  // row sums
    constraint_row row;
    row.rel = relation::eq;
    row.rhs = 1;
    row.coeffs.assign(n, 0);
    for (int j = 0; j < l; ++j) row.coeffs[i * l + j] = 1;
    inst.rows.push_back(std::move(row));
  }
  for (int j = 0; j < l; ++j) {  // column sums
    constraint_row row;
    row.rel = relation::eq;
    row.rhs = 1;
    row.coeffs.assign(n, 0);
    for (int i = 0; i < l; ++i) row.coeffs[i * l + j] = 1;
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

// Discrete facility location, minimization; l customers, q facilities.
// Variables: x_ij (i-major, l*q of them) then y_j (q of them), n = (l+1)q.
// Draw order: customer coordinates (x,y) per customer, facility coordinates
// (x,y) per facility, then c2[i][j] i-major, then f1[0..q), then f2[0..q).
inline instance gen_facility_location(int l, int q, std::uint64_t seed) {
  if (l < 1 || q < 1) throw std::invalid_argument("gen_facility_location: l, q must be >= 1");
  rng64 rng(seed);

  int const n = (l + 1) * q;
  instance inst;
  inst.n = n;
  inst.sense = objective_sense::min;
  inst.tag = class_tag{problem_class::facility_location, 0, l, q};
  inst.seed = seed;

  std::vector<double> cx(l), cy(l), fx(q), fy(q);
  for (int i = 0; i < l; ++i) {
    cx[i] = rng.uniform_real(0.0, 200.0);
    cy[i] = rng.uniform_real(0.0, 200.0);
  }
  for (int j = 0; j < q; ++j) {
    fx[j] = rng.uniform_real(0.0, 200.0);
    fy[j] = rng.uniform_real(0.0, 200.0);
  }

  inst.obj[0].assign(n, 0);
  inst.obj[1].assign(n, 0);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < q; ++j) {
      double d = std::abs(cx[i] - fx[j]) + std::abs(cy[i] - fy[j]);
      inst.obj[0][i * q + j] = std::llround(d);  // integral data for exact dominance
    }
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < q; ++j) inst.obj[1][i * q + j] = rng.uniform(1, 200);
  for (int j = 0; j < q; ++j) inst.obj[0][l * q + j] = rng.uniform(200, 400);
  for (int j = 0; j < q; ++j) inst.obj[1][l * q + j] = rng.uniform(200, 400);

  for (int i = 0; i < l; ++i) {  // every customer assigned exactly once
    constraint_row row;
    row.rel = relation::eq;
    row.rhs = 1;
    row.coeffs.assign(n, 0);
    for (int j = 0; j < q; ++j) row.coeffs[i * q + j] = 1;
    inst.rows.push_back(std::move(row));
  }
  for (int i = 0; i < l; ++i)  // x_ij <= y_j
    for (int j = 0; j < q; ++j) {
      constraint_row row;
      row.rel = relation::le;
      row.rhs = 0;
      row.coeffs.assign(n, 0);
      row.coeffs[i * q + j] = 1;
      row.coeffs[l * q + j] = -1;
      inst.rows.push_back(std::move(row));
    }
  return inst;
}

}  // namespace mobb

#endif  // MOBB_GENERATORS_HPP_
