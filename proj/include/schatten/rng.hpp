// rng.hpp -- seeded 64-bit LCG used everywhere randomness is needed.
//
// state' = state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
// Doubles are drawn from the top 53 bits, uniform on [0, 1).
// The generator is part of the reproducibility contract: identical seeds
// give identical sample streams on every platform.
#pragma once

#include <cstdint>

#include "schatten/core.hpp"

namespace schatten {

class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  // uniform on [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform on [lo, hi)
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // uniform on the open disk of given radius (rejection from the square)
  cplx next_in_disk(double radius = 1.0) {
    for (;;) {
      double x = next_in(-1.0, 1.0);
      double y = next_in(-1.0, 1.0);
      if (x * x + y * y < 1.0) return cplx(radius * x, radius * y);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace schatten
