#pragma once

#include <cmath>
#include <cstdint>

// Counter-based random numbers. Every variate is a pure function of
// (seed, counter words), so any lattice cell or path can be generated
// independently of all others and in any order.

namespace swe::rng {

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 (Steele/Lea/Vigna): advances state, returns a mixed word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += golden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Order-sensitive combine of two words into one well-mixed key.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + golden * (b + 0x632BE59BD9B4E019ULL);
  std::uint64_t m = splitmix64(s);
  s ^= m;
  return splitmix64(s);
}

// Seed for path i derived from the campaign master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master, index);
}

// Map 64 random bits to a uniform in (0, 1]; never 0, so log() is safe.
inline double to_unit(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Standard normal addressed by (seed, n, j) via Box-Muller.
inline double gauss_cell(std::uint64_t seed, std::uint64_t n, std::uint64_t j) {
  std::uint64_t s = mix64(mix64(seed, n), j);
  double u1 = to_unit(splitmix64(s));
  double u2 = to_unit(splitmix64(s));
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace swe::rng
