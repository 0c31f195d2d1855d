// parallel.hpp -- OpenMP kernels with a serial twin.
//
// All reductions are blocked: each fixed-size block is accumulated serially,
// block partials are then folded in index order. The result is bit-identical
// whether the block loop runs on one thread or many, so the parallel path can
// be validated against the serial reference exactly and CSV outputs do not
// depend on the thread count.
#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "schatten/core.hpp"

namespace schatten::par {

inline std::atomic<bool>& enabled_flag() {
  static std::atomic<bool> flag{true};
  return flag;
}
inline bool enabled() { return enabled_flag().load(std::memory_order_relaxed); }
inline void set_enabled(bool on) { enabled_flag().store(on, std::memory_order_relaxed); }

inline constexpr std::int64_t block_size = 4096;

// sum of f(i) for i in [0, n), deterministic blocked reduction
template <class F>
double blocked_sum(std::int64_t n, F&& f) {
  if (n <= 0) return 0.0;
  const std::int64_t nblocks = (n + block_size - 1) / block_size;
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
  if (enabled()) {
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nblocks; ++b) {
      double acc = 0.0;
      const std::int64_t lo = b * block_size;
      const std::int64_t hi = lo + block_size < n ? lo + block_size : n;
      for (std::int64_t i = lo; i < hi; ++i) acc += f(i);
      partial[static_cast<std::size_t>(b)] = acc;
    }
  } else {
    for (std::int64_t b = 0; b < nblocks; ++b) {
      double acc = 0.0;
      const std::int64_t lo = b * block_size;
      const std::int64_t hi = lo + block_size < n ? lo + block_size : n;
      for (std::int64_t i = lo; i < hi; ++i) acc += f(i);
      partial[static_cast<std::size_t>(b)] = acc;
    }
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// independent iterations, no reduction; f(i) must only write to slot i
template <class F>
void parallel_for(std::int64_t n, F&& f) {
  if (n <= 0) return;
  if (enabled()) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) f(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) f(i);
  }
}

}  // namespace schatten::par
