#pragma once

#include <cstdint>
#include <random>

namespace radonlab {

/// Portable random stream: std::mt19937_64 (its output sequence is fixed by the
/// C++ standard) with explicit conversions instead of the implementation-defined
/// std:: distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double rho) { return uniform() < rho; }
  /// Uniform on [lo, hi] by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for a sub-stream, independent of the order in which streams are used.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace radonlab
