#ifndef MOBB_GEOMETRY_HPP_
#define MOBB_GEOMETRY_HPP_

#include "mobb/scalar.hpp"

#include <cstdint>

namespace mobb {

// A point in objective space. All comparisons follow the componentwise order
// of the minimization orientation.
template <typename S>
struct point2 {
  S z1{};
  S z2{};

  friend bool operator==(point2 const& a, point2 const& b) {
    return a.z1 == b.z1 && a.z2 == b.z2;
  }
  friend bool operator!=(point2 const& a, point2 const& b) { return !(a == b); }
};

using ipoint2 = point2<std::int64_t>;

// a <= b componentwise (weak dominance, equality allowed).
template <typename S>
bool weakly_dominates(point2<S> const& a, point2<S> const& b) {
  return a.z1 <= b.z1 && a.z2 <= b.z2;
}

// a < b componentwise.
template <typename S>
bool strictly_dominates(point2<S> const& a, point2<S> const& b) {
  return a.z1 < b.z1 && a.z2 < b.z2;
}

// a <= b and a != b.
template <typename S>
bool dominates(point2<S> const& a, point2<S> const& b) {
  return weakly_dominates(a, b) && !(a == b);
}

// Lexicographic order by z1 then z2, the canonical frontier order.
template <typename S>
bool lex_less(point2<S> const& a, point2<S> const& b) {
  return a.z1 < b.z1 || (a.z1 == b.z1 && a.z2 < b.z2);
}

template <typename S>
point2<S> make_point(std::int64_t z1, std::int64_t z2) {
  using T = scalar_traits<S>;
  return point2<S>{T::from_int(z1), T::from_int(z2)};
}

template <typename S>
point2<S> to_scalar_point(ipoint2 const& p) {
  return make_point<S>(p.z1, p.z2);
}

template <typename S>
ipoint2 to_int_point(point2<S> const& p) {
  using T = scalar_traits<S>;
  return ipoint2{T::to_int64(p.z1), T::to_int64(p.z2)};
}

}  // namespace mobb

#endif  // MOBB_GEOMETRY_HPP_
