#ifndef MOBB_INSTANCE_HPP_
#define MOBB_INSTANCE_HPP_

#include "mobb/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mobb {

enum class relation : unsigned char { le, eq };
enum class objective_sense : unsigned char { min, max };
enum class problem_class : unsigned char { generic, knapsack, assignment, facility_location };

struct class_tag {
  problem_class kind = problem_class::generic;
  int m = 0;  // knapsack: constraint count
  int l = 0;  // assignment: side length; facility: customers
  int q = 0;  // facility: facility count

  friend bool operator==(class_tag const&, class_tag const&) = default;
};

struct constraint_row {
  std::vector<std::int64_t> coeffs;
  relation rel = relation::le;
  std::int64_t rhs = 0;

  friend bool operator==(constraint_row const&, constraint_row const&) = default;
};

// A bi-objective 0/1 linear program. Objectives are stored in minimization
// orientation: for max-sense instances the coefficients kept here are the
// negated originals, and results are re-negated on output.
struct instance {
  int n = 0;
  std::array<std::vector<std::int64_t>, 2> obj;  // min-sense coefficients
  std::vector<constraint_row> rows;
  objective_sense sense = objective_sense::min;
  class_tag tag;
  std::optional<std::uint64_t> seed;

  friend bool operator==(instance const&, instance const&) = default;
};

// Image of a 0/1 vector in min-sense orientation.
inline ipoint2 evaluate(instance const& inst, std::vector<std::uint8_t> const& x) {
  if (static_cast<int>(x.size()) != inst.n)
    throw std::invalid_argument("evaluate: assignment length does not match n");
  std::int64_t a = 0, b = 0;
  for (int j = 0; j < inst.n; ++j) {
    if (x[j]) {
      a += inst.obj[0][j];
      b += inst.obj[1][j];
    }
  }
  return ipoint2{a, b};
}

inline bool is_feasible(instance const& inst, std::vector<std::uint8_t> const& x) {
  if (static_cast<int>(x.size()) != inst.n)
    throw std::invalid_argument("is_feasible: assignment length does not match n");
  for (auto const& row : inst.rows) {
    std::int64_t lhs = 0;
    for (int j = 0; j < inst.n; ++j)
      if (x[j]) lhs += row.coeffs[j];
    if (row.rel == relation::le ? lhs > row.rhs : lhs != row.rhs) return false;
  }
  return true;
}

// Map a min-sense image back to the instance's original orientation.
inline ipoint2 to_original_sense(instance const& inst, ipoint2 const& p) {
  if (inst.sense == objective_sense::max) return ipoint2{-p.z1, -p.z2};
  return p;
}

// A feasible 0/1 solution together with its exact min-sense image.
struct solution {
  std::vector<std::uint8_t> assignment;
  ipoint2 image{};

  friend bool operator==(solution const&, solution const&) = default;
};

inline solution make_solution(instance const& inst, std::vector<std::uint8_t> x) {
  solution s;
  s.image = evaluate(inst, x);
  s.assignment = std::move(x);
  return s;
}

}  // namespace mobb

#endif  // MOBB_INSTANCE_HPP_
