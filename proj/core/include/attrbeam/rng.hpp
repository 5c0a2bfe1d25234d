#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace attrbeam::rng {

// Deterministic draw helpers on top of std::mt19937_64. The standard
// distributions are implementation-defined, so everything here is spelled
// out to keep seeded outputs identical across toolchains.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent stream seed derived from a root seed and up to three
/// stream coordinates (e.g. explainer, instance, trial).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t state = root;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (a + 0x9e3779b97f4a7c15ULL);
  mixed = splitmix64(state);
  state = mixed ^ (b + 0xb5297a4d3a2d9cadULL);
  mixed = splitmix64(state);
  state = mixed ^ (c + 0x68e31da4a1ce4e5bULL);
  return splitmix64(state);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(gen);
}

/// Unbiased integer in [0, n) by rejection.
inline std::uint64_t below(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t v;
  do {
    v = gen();
  } while (v >= limit);
  return v % n;
}

/// Standard normal via Box-Muller; consumes two uniforms per call.
inline double normal(std::mt19937_64& gen) {
  double u1;
  do {
    u1 = uniform_unit(gen);
  } while (u1 <= 0.0);
  const double u2 = uniform_unit(gen);
  const double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace attrbeam::rng
