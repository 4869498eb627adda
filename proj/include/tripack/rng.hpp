#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tripack {

// splitmix64, used for seed derivation so that pipeline stages draw from
// independent streams.
inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic RNG. All draws go through our own bounded sampler so that
// identical seeds reproduce identical graphs across platforms (the standard
// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), eng_(mix(seed)) {}

  uint64_t next_u64() { return eng_(); }

  // uniform integer in [lo, hi], inclusive
  int uniform_int(int lo, int hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(bounded(span));
  }

  double uniform01() { return (next_u64() >> 11) * (1.0 / 9007199254740992.0); }

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = bounded(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent child stream; `tag` keeps sibling stages decorrelated.
  Rng fork(uint64_t tag) const {
    uint64_t s = seed_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
    splitmix64(s);
    return Rng(s);
  }

  uint64_t seed() const { return seed_; }

 private:
  static uint64_t mix(uint64_t s) {
    splitmix64(s);
    return splitmix64(s);
  }
  // unbiased bounded draw (rejection)
  uint64_t bounded(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t r;
    do {
      r = next_u64();
    } while (r >= lim);
    return r % n;
  }

  uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace tripack
