#pragma once

// SplitMix64 (Steele, Lea & Flood; public domain reference by S. Vigna).
// Fixed here so that a seed names the same instance on every platform and in
// every reimplementation; std:: distributions are implementation-defined.

#include <cstdint>

#include "miquel/numeric.hpp"

namespace miquel {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi] by rejection: draws below the largest
  /// multiple of the range size are reduced modulo the range, others redrawn.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  /// p/q with p uniform in [-bound, bound] and q uniform in [1, bound].
  Rational rational(std::int64_t bound) {
    const auto p = uniform(-bound, bound);
    const auto q = uniform(1, bound);
    return Rational(mpz_class(static_cast<long>(p)), mpz_class(static_cast<long>(q)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace miquel
