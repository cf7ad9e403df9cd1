#include "spdc/rng.hpp"

#include <cmath>

namespace spdc {

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t stream) {
  // golden-ratio spacing decorrelates nearby stream indices before mixing
  SplitMix64 mix(seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL));
  Rng rng;
  for (auto& word : rng.s_) word = mix.next();
  // xoshiro state must not be all zero
  if ((rng.s_[0] | rng.s_[1] | rng.s_[2] | rng.s_[3]) == 0) rng.s_[0] = 1;
  return rng;
}

std::uint64_t Rng::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // Box-Muller on (0,1] x [0,1)
  double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * M_PI * u2;
  cached_ = r * std::sin(phi);
  has_cached_ = true;
  return r * std::cos(phi);
}

}  // namespace spdc
