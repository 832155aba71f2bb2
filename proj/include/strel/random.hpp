#pragma once

// Sampling routines with a fixed algorithm on top of mt19937_64, so that a
// seed produces the same numbers on every platform (the distributions in
// <random> are implementation-defined).

#include <cstddef>
#include <cstdint>
#include <random>

namespace strel {

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }
  /// Standard normal (Box-Muller).
  double normal();
  double lognormal(double mu, double sigma);
  /// Gamma with the given shape and scale (Marsaglia-Tsang).
  double gamma(double shape, double scale);
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

/// A seed for the i-th independent stream derived from `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace strel
