#pragma once

#include <cstdint>

namespace mpec {

// xoshiro256** with splitmix64 seeding. Period 2^256-1, passes the usual
// statistical batteries, and cheap to construct per trial so that every
// trial owns an independent stream derived from (seed, trial index).
class Rng {
 public:
  Rng() : Rng(0) {}

  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  static Rng for_trial(uint64_t seed, uint64_t trial_index) {
    // Mix the index through splitmix before seeding so adjacent trials
    // start far apart in state space.
    uint64_t x = seed;
    uint64_t a = splitmix64(x);
    x = trial_index ^ 0x9e3779b97f4a7c15ULL;
    uint64_t b = splitmix64(x);
    return Rng(a ^ (b * 0xff51afd7ed558ccdULL));
  }

  uint64_t next() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, bound) via Lemire's multiply-shift rejection.
  uint64_t below(uint64_t bound) {
    uint64_t x = next();
    __uint128_t m = (__uint128_t)x * bound;
    uint64_t l = (uint64_t)m;
    if (l < bound) {
      uint64_t t = (-bound) % bound;
      while (l < t) {
        x = next();
        m = (__uint128_t)x * bound;
        l = (uint64_t)m;
      }
    }
    return (uint64_t)(m >> 64);
  }

  // Uniform double in [0, 1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  static uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static uint64_t mix(uint64_t x) {
    uint64_t s = x;
    return splitmix64(s);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
};

}  // namespace mpec
