#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace encmap {

// Seeded random stream. Conversions from raw 64-bit output are done here
// rather than through <random> distributions, whose algorithms differ between
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Exponential with the given mean; strictly positive.
  double exponential(double mean) { return -mean * std::log(uniform01()); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t index(std::uint64_t n) {
    // Rejection removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace encmap
