#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ksb {

// SplitMix64: a counter-based generator (Steele et al.'s splittable PRNG).
// The state advances by a fixed odd gamma and outputs pass through a strong
// 64-bit finalizer, so the sequence is identical on every platform and
// independent streams can be forked cheaply with split(). All mask
// generators draw from this, never from std:: engines, to keep masks
// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : state_(stream == 0 ? seed : mix(seed ^ mix(stream))) {}

  static uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Debiased bounded integer in [0, bound) (Lemire's method).
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) return 0;
    while (true) {
      const uint64_t x = next_u64();
      const __uint128_t m = __uint128_t(x) * bound;
      const uint64_t lo = uint64_t(m);
      if (lo >= bound || lo >= (-bound) % bound) return uint64_t(m >> 64);
    }
  }

  // Standard normal via Box-Muller. The second deviate is discarded so the
  // draw count per gaussian is fixed, which keeps downstream draws aligned
  // regardless of how many gaussians a caller consumes.
  double next_gaussian() {
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Fork an independent stream identified by `tag`; the parent is unchanged.
  Rng split(uint64_t tag) const { return Rng(mix(state_ ^ mix(tag)), 0); }

 private:
  uint64_t state_;
};

// Deterministic seed derivation for grid sweeps: folds each index into the
// base seed through the same finalizer.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0,
                            uint64_t c = 0) {
  uint64_t h = Rng::mix(base ^ 0xA0761D6478BD642FULL);
  h = Rng::mix(h ^ Rng::mix(a ^ 0xE7037ED1A0B428DBULL));
  h = Rng::mix(h ^ Rng::mix(b ^ 0x8EBC6AF09C88C6E3ULL));
  h = Rng::mix(h ^ Rng::mix(c ^ 0x589965CC75374CC3ULL));
  return h;
}

}  // namespace ksb
