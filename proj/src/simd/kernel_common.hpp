#pragma once
// Shared scalar helpers for the kernel translation units.

#include <cstdint>

namespace delve::simd::detail {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr std::uint32_t kGolden32 = 0x9E3779B9u;

inline double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

inline double lattice_frac(std::uint32_t i, std::uint32_t spacing) {
  return static_cast<double>(i % spacing) / static_cast<double>(spacing);
}

inline std::uint32_t mix32(std::uint32_t x) {
  x ^= x >> 16;
  x *= 0x7FEB352Du;
  x ^= x >> 15;
  x *= 0x846CA68Bu;
  x ^= x >> 16;
  return x;
}

}  // namespace delve::simd::detail
