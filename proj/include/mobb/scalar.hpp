#ifndef MOBB_SCALAR_HPP_
#define MOBB_SCALAR_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace mobb {

// Exact rational scalar used for all correctness-critical arithmetic.
using rat = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

// Fixed-width exact rational: much faster than cpp_rational (no heap) and
// checked, so an overflow raises std::overflow_error instead of corrupting a
// result. solve_exact() runs on this and falls back to rat on overflow.
using rat256 = boost::multiprecision::number<boost::multiprecision::rational_adaptor<
    boost::multiprecision::cpp_int_backend<256, 256, boost::multiprecision::signed_magnitude,
                                           boost::multiprecision::checked, void>>>;

// scalar_traits selects the arithmetic mode. rat gives exact results and is
// the default everywhere; double trades exactness for speed and is meant for
// benchmarking only (tolerances below).
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<rat> {
  static constexpr bool exact = true;

  static rat from_int(std::int64_t v) { return rat(v); }
  static double to_double(rat const& v) { return v.template convert_to<double>(); }

  // Exact mode uses zero tolerances throughout.
  static rat feas_tol() { return rat(0); }

  static bool is_integer(rat const& v) { return denominator(v) == 1; }
  static bool is_zero(rat const& v) { return v == 0; }
  static bool is_zero_one(rat const& v) { return v == 0 || v == 1; }
  static bool eq(rat const& a, rat const& b) { return a == b; }

  static std::int64_t to_int64(rat const& v) {
    return static_cast<std::int64_t>(numerator(v) / denominator(v));
  }

  static rat ceil_value(rat const& v) {
    bigint const num = numerator(v);
    bigint const den = denominator(v);  // always positive
    bigint q = num / den;               // truncates toward zero
    if (num % den != 0 && num > 0) ++q;
    return rat(q);
  }
};

template <>
struct scalar_traits<rat256> {
  static constexpr bool exact = true;

  static rat256 from_int(std::int64_t v) { return rat256(v); }
  static double to_double(rat256 const& v) { return v.template convert_to<double>(); }

  static rat256 feas_tol() { return rat256(0); }

  static bool is_integer(rat256 const& v) { return denominator(v) == 1; }
  static bool is_zero(rat256 const& v) { return v == 0; }
  static bool is_zero_one(rat256 const& v) { return v == 0 || v == 1; }
  static bool eq(rat256 const& a, rat256 const& b) { return a == b; }

  static std::int64_t to_int64(rat256 const& v) {
    return static_cast<std::int64_t>(numerator(v) / denominator(v));
  }

  static rat256 ceil_value(rat256 const& v) {
    auto const num = numerator(v);
    auto const den = denominator(v);
    auto q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return rat256(q);
  }
};

// Exact cross-width conversion.
inline rat to_rat(rat const& v) { return v; }
inline rat to_rat(rat256 const& v) {
  return rat(numerator(v).template convert_to<bigint>(),
             denominator(v).template convert_to<bigint>());
}

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;

  static double from_int(std::int64_t v) { return static_cast<double>(v); }
  static double to_double(double v) { return v; }

  static double feas_tol() { return 1e-9; }

  static bool is_integer(double v) { return std::abs(v - std::round(v)) <= 1e-6; }
  static bool is_zero(double v) { return std::abs(v) <= 1e-9; }
  static bool is_zero_one(double v) {
    return std::abs(v) <= 1e-6 || std::abs(v - 1.0) <= 1e-6;
  }
  static bool eq(double a, double b) { return std::abs(a - b) <= 1e-9; }

  static std::int64_t to_int64(double v) { return std::llround(v); }

  static double ceil_value(double v) { return std::ceil(v - 1e-9); }
};

template <typename S>
S abs_value(S const& v) {
  return v < S(0) ? S(-v) : v;
}

}  // namespace mobb

#endif  // MOBB_SCALAR_HPP_
