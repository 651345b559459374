#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace abq {

// splitmix64 finalizer; good avalanche, used to derive stream seeds from
// (master seed, index...) key tuples so that parallel and serial generation
// agree bit for bit.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(std::initializer_list<uint64_t> keys) {
  uint64_t h = 0x853c49e6748fea9bULL;
  for (uint64_t k : keys) h = mix64(h ^ mix64(k));
  return h;
}

// One independent random stream. All randomness in the project flows through
// this class so that runs are reproducible from a single seed.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : eng_(mix64(seed)) {}

  uint64_t next_u64() { return eng_(); }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform integer in [0, bound), bound >= 1; masked rejection, unbiased
  uint64_t next_below(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t mask = ~uint64_t{0} >> __builtin_clzll((bound - 1) | 1);
    uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= bound);
    return v;
  }

  // +1 or -1 with equal probability
  double next_sign() { return (next_u64() >> 63) ? -1.0 : 1.0; }

  // standard normal, Box-Muller (spare discarded to keep draw counts fixed)
  double next_normal() {
    double u1;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace abq
