#pragma once

#include <cstdint>
#include <random>

#include "s2al/errors.hpp"

namespace s2al {

/// splitmix64 output function. Used both as a stand-alone mixer for seed
/// derivation and (indirectly) to decorrelate nearby seeds before they reach
/// the main generator.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives the seed for an independent stream (trial index, generator stage,
/// ...) from a base seed. Distinct streams give statistically independent
/// mt19937_64 sequences.
inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) {
  return mix64(base + 0x9e3779b97f4a7c15ull * (stream + 1));
}

/// mt19937_64 with hand-rolled distributions. The raw engine output is pinned
/// by the C++ standard; std::uniform_int_distribution and friends are not, so
/// frozen test values would silently change across standard libraries if we
/// used them.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform integer in [0, bound). Rejection sampling over the smallest
  /// covering power of two, so no modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) throw input_error("uniform_index: bound must be positive");
    if (bound == 1) return 0;
    std::uint64_t mask = ~0ull >> __builtin_clzll(bound - 1);
    for (;;) {
      std::uint64_t draw = gen_() & mask;
      if (draw < bound) return draw;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace s2al
