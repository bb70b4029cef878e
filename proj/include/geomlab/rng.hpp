// Counter-based random streams for the Monte Carlo estimators.  Sample i of a
// run draws from its own stream derived from (seed, i), so results do not
// depend on how samples are distributed over workers.
#pragma once

#include <cstdint>

namespace geomlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stateless per-sample stream: draw k for sample i under a run seed.
struct SampleStream {
  std::uint64_t base;

  SampleStream(std::uint64_t seed, std::uint64_t sample)
      : base(splitmix64(seed ^ splitmix64(sample + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t bits(std::uint64_t k) const { return splitmix64(base + k); }

  // Uniform in [0,1) with 53-bit resolution.
  double uniform(std::uint64_t k) const {
    return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo,hi).
  double uniform(std::uint64_t k, double lo, double hi) const {
    return lo + (hi - lo) * uniform(k);
  }
};

}  // namespace geomlab
