#ifndef MOBB_RNG_HPP_
#define MOBB_RNG_HPP_

#include <cstdint>

namespace mobb {

// Counter-based 64-bit generator (splitmix64 output function). The stream is
// a pure function of (seed, draw index), so instances are reproducible across
// platforms. uniform() is inclusive of both endpoints and uses rejection
// sampling to avoid modulo bias.
class rng64 {
 public:
  explicit rng64(std::uint64_t seed) : m_counter(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (m_counter += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    std::uint64_t limit = (~std::uint64_t{0} / span) * span;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return lo + static_cast<std::int64_t>(v % span);
  }

  // Uniform in [lo, hi) with 53-bit resolution.
  double uniform_real(double lo, double hi) {
    double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

 private:
  std::uint64_t m_counter;
};

}  // namespace mobb

#endif  // MOBB_RNG_HPP_
