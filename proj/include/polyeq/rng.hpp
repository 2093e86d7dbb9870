#pragma once

#include <cstdint>

#include "polyeq/rational.hpp"

namespace polyeq {

// SplitMix64. All generators in the library draw from it so that a seed
// pins every instance bit-for-bit across platforms (no libc or libstdc++
// distributions anywhere). Independent streams are derived from
// (seed, stream index) pairs; generators assign one stream per edge index
// so that adding or removing later edges never perturbs earlier draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  // Independent stream k of a master seed.
  static Rng stream(std::uint64_t seed, std::uint64_t k) {
    return Rng(mix(seed + 0x9E3779B97F4A7C15ULL * (k + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on {0, ..., bound-1}, unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~0ULL / bound);
    std::uint64_t r = next();
    while (r >= limit) r = next();
    return r % bound;
  }

  // Uniform integer in [lo, hi], inclusive.
  long long next_int(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Dyadic rational k/2^31 uniform on [0, 1). Dyadic draws convert to
  // double without rounding, so the exact and float views of a generated
  // game agree bit-for-bit.
  Rational next_unit() {
    return Rational(static_cast<unsigned long>(next_below(1ULL << 31)),
                    1UL << 31);
  }

  // Dyadic rational k/2^31 uniform on (0, 1].
  Rational next_unit_positive() {
    return Rational(
        static_cast<unsigned long>(next_below(1ULL << 31)) + 1UL, 1UL << 31);
  }

  double next_unit_double() {
    return static_cast<double>(next_below(1ULL << 53)) / 9007199254740992.0;
  }

 private:
  std::uint64_t state_;
};

}  // namespace polyeq
