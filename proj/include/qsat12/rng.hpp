#pragma once

#include <cmath>
#include <cstdint>

namespace qsat12 {

// splitmix64, used for seed derivation and state initialization.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream-splitting rule: the generator for sub-stream k of a master seed is
// seeded with derive_seed(master, k). Pure mixing, platform independent.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  uint64_t s = master;
  uint64_t h = splitmix64(s);
  s = h ^ (stream + 0x9e3779b97f4a7c15ULL);
  return splitmix64(s);
}

// xoshiro256** with fully specified bit-exact output across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  uint64_t next() {
    auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased uniform integer in [0, bound). Rejection sampling on the top
  // multiple of bound; never calls the (implementation-defined) std
  // distributions.
  uint64_t below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1], safe as a log argument.
  double next_double_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

 private:
  uint64_t s_[4];
};

}  // namespace qsat12
