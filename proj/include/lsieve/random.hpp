#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace lsieve {

/// Counter-mode generator keyed by (seed, stream): output i is
/// splitmix64(key + (i + 1) * gamma). Streams share no state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed) ^ mix(stream * kGamma + 0x2545F4914F6CDD1DULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Standard complex Gaussian stream: E|z|^2 = 1.
class ComplexGaussian {
 public:
  ComplexGaussian(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

  std::complex<double> operator()() {
    const double re = dist_(rng_);
    const double im = dist_(rng_);
    return {re, im};
  }

 private:
  CounterRng rng_;
  std::normal_distribution<double> dist_{0.0, 0.7071067811865476};
};

}  // namespace lsieve
