#ifndef SPDC_RNG_HPP
#define SPDC_RNG_HPP

// Deterministic, splittable random streams. Every stream is derived from
// (seed, stream index) through SplitMix64 into xoshiro256++ state, so
// per-scan-step streams are independent and results do not depend on
// execution order or thread count. Gaussian variates use Box-Muller (no
// rejection), keeping the draw sequence identical across platforms;
// std::normal_distribution is unspecified across standard libraries, which
// would break the bit-identical-histogram contract.

#include <cstdint>

namespace spdc {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Rng {
 public:
  // independent stream for (seed, stream); stream 0 is the default
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // uniform in [0,1) with 53 random bits
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  // standard normal, Box-Muller; caches the second variate
  double normal();

 private:
  std::uint64_t s_[4] = {0, 0, 0, 0};
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace spdc

#endif  // SPDC_RNG_HPP
