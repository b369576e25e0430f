#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace minlab {

// One splitmix64 step: advances state by the golden-ratio increment and
// returns the mixed output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Top 53 bits as a double in [0, 1).
inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Additive-recurrence R2 sequence on the unit square,
///   p_n = frac(offset + n * (1/g, 1/g^2)),  g^3 = g + 1 (plastic number),
/// with the offset drawn from splitmix64(seed).
class R2Sequence {
 public:
  explicit R2Sequence(std::uint64_t seed) {
    std::uint64_t s = seed;
    x0_ = unit_double(splitmix64_next(s));
    y0_ = unit_double(splitmix64_next(s));
  }

  std::pair<double, double> operator[](std::uint64_t n) const {
    constexpr double g = 1.32471795724474602596;
    constexpr double a1 = 1.0 / g, a2 = 1.0 / (g * g);
    const double x = x0_ + static_cast<double>(n) * a1;
    const double y = y0_ + static_cast<double>(n) * a2;
    return {x - std::floor(x), y - std::floor(y)};
  }

 private:
  double x0_ = 0.0;
  double y0_ = 0.0;
};

}  // namespace minlab
