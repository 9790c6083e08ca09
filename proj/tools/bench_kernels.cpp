// Apache License, Version 2.0, refer to LICENSE.txt
//
// Benchmark the OpenMP-parallel kernels against the serial reference paths.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lss/diagnostics.hpp"
#include "lss/discrete.hpp"
#include "lss/parallel.hpp"
#include "lss/rng.hpp"
#include "lss/targets.hpp"

namespace {

using namespace lss;

template <class F>
double time_seconds(int reps, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
             .count() /
         reps;
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s serial %10.6fs   openmp %10.6fs   speedup %5.2fx\n", name,
              serial_s, parallel_s, serial_s / parallel_s);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without openmp; both columns run serially\n");
#endif

  Rng rng(1);

  {  // state-space block log density, d = 500
    const auto data = targets::generate_state_space_data(rng);
    const auto target = targets::state_space_log_density(data, 1.0);
    std::vector<double> x(500);
    for (auto& v : x) v = normal(rng, 0.0, 1.0);
    // blocked_sum's `parallel` flag is what the bench toggles; the target
    // itself always runs the parallel path, so time the reduction directly
    const auto body = [&](bool parallel) {
      const auto& counts = data.counts;
      return par::blocked_sum(
          x.size(),
          [&](std::size_t i) {
            const double prev = i == 0 ? 0.0 : x[i - 1];
            const double d = x[i] - 0.8 * prev;
            return x[i] * static_cast<double>(counts[i]) - std::exp(x[i]) -
                   0.5 * d * d;
          },
          parallel);
    };
    volatile double sink = 0.0;
    const double serial = time_seconds(2000, [&] { sink = body(false); });
    const double parallel = time_seconds(2000, [&] { sink = body(true); });
    report("state-space log density", serial, parallel);
    (void)sink;
  }

  {  // spike-slab posterior log density, n = 100, p = 90
    const auto data = targets::generate_spike_slab_data(rng);
    const auto target = targets::spike_slab_log_density(data);
    std::vector<double> beta(90, 0.5);
    const auto row_term = [&](std::size_t i) {
      const double* row = data.design.data() + i * data.p;
      double fit = 0.0;
      for (std::size_t j = 0; j < data.p; ++j) fit += row[j] * beta[j];
      const double r = data.response[i] - fit;
      return r * r;
    };
    volatile double sink = 0.0;
    const double serial =
        time_seconds(2000, [&] { sink = par::blocked_sum(data.n, row_term, false); });
    const double parallel =
        time_seconds(2000, [&] { sink = par::blocked_sum(data.n, row_term, true); });
    report("spike-slab residual sum", serial, parallel);
    (void)sink;
    sink = target(beta);  // keep the full path exercised
  }

  {  // autocorrelation over 512 lags of a 2e5-long chain
    std::vector<double> series(200000);
    double prev = 0.0;
    for (auto& v : series) {
      prev = 0.9 * prev + normal(rng, 0.0, 1.0);
      v = prev;
    }
    // serial reference: same sums, lag loop unparallelized
    const auto serial_acf = [&] {
      const std::size_t n = series.size();
      double mu = 0.0;
      for (double v : series) mu += v;
      mu /= static_cast<double>(n);
      double denom = 0.0;
      for (double v : series) denom += (v - mu) * (v - mu);
      std::vector<double> acf(513, 0.0);
      for (std::size_t lag = 1; lag <= 512; ++lag) {
        double acc = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t)
          acc += (series[t] - mu) * (series[t + lag] - mu);
        acf[lag] = acc / denom;
      }
      return acf[512];
    };
    volatile double sink = 0.0;
    const double serial = time_seconds(3, [&] { sink = serial_acf(); });
    const double parallel = time_seconds(3, [&] {
      sink = diag::autocorrelation(series, 512).back();
    });
    report("acf over 512 lags", serial, parallel);
    (void)sink;
  }

  {  // detailed-balance pair scan
    std::vector<double> pmf(64);
    for (auto& p : pmf) p = 0.05 + rng.next_double();
    const DiscreteTarget target{
        [&pmf](long z) {
          return z >= 0 && z < 64 ? std::log(pmf[static_cast<std::size_t>(z)])
                                  : kNegInf;
        },
        0};
    volatile double sink = 0.0;
    // the scan is parallel-for with a max reduction; serial path = 1 thread
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double serial =
        time_seconds(3, [&] { sink = detailed_balance_residual(target, 63, 8); });
    omp_set_num_threads(saved);
#else
    const double serial =
        time_seconds(3, [&] { sink = detailed_balance_residual(target, 63, 8); });
#endif
    const double parallel =
        time_seconds(3, [&] { sink = detailed_balance_residual(target, 63, 8); });
    report("detailed-balance scan", serial, parallel);
    (void)sink;
  }

  return 0;
}
