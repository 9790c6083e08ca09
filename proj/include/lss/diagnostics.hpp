// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef LSS_DIAGNOSTICS_HPP
#define LSS_DIAGNOSTICS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lss::diag {

//! Biased ACF estimator at lags 0..max_lag (lag 0 entry is 1).  A constant
//! series has no defined ACF; entries come back NaN.
std::vector<double> autocorrelation(std::span<const double> series,
                                    std::size_t max_lag);

//! n / (1 + 2 * sum of ACF through the last lag before it first drops <= 0).
//! NaN for a constant series.
double effective_sample_size(std::span<const double> series);

//! Integrated autocorrelation time n / ess (>= 1 for any real chain).
double autocorrelation_time(std::span<const double> series);

//! Sup-distance between the empirical CDF of the series and `cdf`.
double ks_statistic(std::span<const double> series,
                    const std::function<double(double)>& cdf);

//! Asymptotic Kolmogorov-Smirnov critical value at level alpha (0.01 or
//! 0.05) for sample size n.
double ks_critical(double alpha, std::size_t n);

//! Thin the series to roughly one point per effective sample, then apply the
//! KS test; returns {statistic, subsample size}.  This is the stationarity
//! check used on autocorrelated chains.
struct SubsampledKs {
  double statistic;
  std::size_t n_subsample;
};
SubsampledKs ess_adjusted_ks(std::span<const double> series,
                             const std::function<double(double)>& cdf);

//! Fraction of samples in each of the regions cut by ascending boundaries
//! (size boundaries.size() + 1).
std::vector<double> mode_fraction(std::span<const double> series,
                                  std::span<const double> boundaries);

struct ChainSummary {
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q50 = 0.0;
  double q975 = 0.0;
  double ess = 0.0;
  double act = 0.0;
  std::optional<double> ks_stat;
  std::optional<std::vector<double>> mode_fractions;
};

ChainSummary summarize(std::span<const double> series);

//! Pearson correlation of two equal-length series.
double correlation(std::span<const double> a, std::span<const double> b);

//! Chi-square statistic of observed counts against expected counts.
double chi_square_statistic(std::span<const double> observed,
                            std::span<const double> expected);

//! Standard normal CDF.
double standard_normal_cdf(double x);

}  // namespace lss::diag

#endif
