// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef LSS_PARALLEL_HPP
#define LSS_PARALLEL_HPP

#include <cstddef>
#include <vector>

namespace lss::par {

// Fixed block width for reductions. Partial sums are always formed per block
// and combined in block order, so the result is bit-identical for any thread
// count -- seeded runs must reproduce byte-for-byte with OpenMP enabled.
inline constexpr std::size_t kBlockWidth = 64;

//! Sum of f(i) for i in [0, n), blocked reduction.
//! `parallel = false` runs the identical blocking serially; tests assert the
//! two paths agree exactly.
template <class F>
double blocked_sum(std::size_t n, F&& f, bool parallel = true) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + kBlockWidth - 1) / kBlockWidth;
  if (nblocks == 1) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += f(i);
    return acc;
  }
  std::vector<double> partial(nblocks);
  const long nb = static_cast<long>(nblocks);
#pragma omp parallel for schedule(static) if (parallel)
  for (long blk = 0; blk < nb; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kBlockWidth;
    const std::size_t hi = lo + kBlockWidth < n ? lo + kBlockWidth : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += f(i);
    partial[static_cast<std::size_t>(blk)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

//! Plain left-to-right accumulation; the independent reference the blocked
//! paths are checked against.
template <class F>
double reference_sum(std::size_t n, F&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += f(i);
  return acc;
}

}  // namespace lss::par

#endif
