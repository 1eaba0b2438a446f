#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace itopo {

// Thin wrapper around mt19937_64 with hand-rolled draw helpers.  The std
// distribution objects are implementation defined, so sampling through them
// would make results differ between libstdc++/libc++; everything here is
// specified exactly and thus reproducible anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

  std::uint64_t next_u64() { return eng_(); }

  // Unbiased integer in [0, bound) via rejection sampling; bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Exponential with the given rate (mean 1/rate).
  double exponential(double rate) {
    double u;
    do {
      u = uniform01();
    } while (u <= 0.0);  // never true with >>11, but keep log() safe
    return -std::log1p(-u) / rate;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // splitmix64-style finalizer; decorrelates small consecutive seeds.
  static std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace itopo
