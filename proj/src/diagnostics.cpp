// Apache License, Version 2.0, refer to LICENSE.txt

#include "lss/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lss::diag {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_length(std::span<const double> series, std::size_t at_least,
                    const char* who) {
  if (series.size() < at_least)
    throw std::invalid_argument(std::string(who) + ": series too short");
}

double mean_of(std::span<const double> series) {
  double acc = 0.0;
  for (double v : series) acc += v;
  return acc / static_cast<double>(series.size());
}

}  // namespace

std::vector<double> autocorrelation(std::span<const double> series,
                                    std::size_t max_lag) {
  require_length(series, 2, "autocorrelation");
  const std::size_t n = series.size();
  max_lag = std::min(max_lag, n - 1);
  const double mu = mean_of(series);
  double denom = 0.0;
  for (double v : series) denom += (v - mu) * (v - mu);

  std::vector<double> acf(max_lag + 1, kNaN);
  if (denom == 0.0) return acf;  // constant series: flagged as NaN
  acf[0] = 1.0;
  const long lags = static_cast<long>(max_lag);
#pragma omp parallel for schedule(static)
  for (long lag = 1; lag <= lags; ++lag) {
    double acc = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t)
      acc += (series[t] - mu) * (series[t + lag] - mu);
    acf[static_cast<std::size_t>(lag)] = acc / denom;
  }
  return acf;
}

double effective_sample_size(std::span<const double> series) {
  require_length(series, 10, "effective_sample_size");
  const std::size_t n = series.size();
  const double mu = mean_of(series);
  double denom = 0.0;
  for (double v : series) denom += (v - mu) * (v - mu);
  if (denom == 0.0) return kNaN;

  // initial-positive-sequence truncation: sum lags until the ACF drops <= 0
  double acf_sum = 0.0;
  for (std::size_t lag = 1; lag < n; ++lag) {
    double acc = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t)
      acc += (series[t] - mu) * (series[t + lag] - mu);
    const double rho = acc / denom;
    if (rho <= 0.0) break;
    acf_sum += rho;
  }
  return static_cast<double>(n) / (1.0 + 2.0 * acf_sum);
}

double autocorrelation_time(std::span<const double> series) {
  const double ess = effective_sample_size(series);
  return static_cast<double>(series.size()) / ess;
}

double ks_statistic(std::span<const double> series,
                    const std::function<double(double)>& cdf) {
  require_length(series, 1, "ks_statistic");
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

double ks_critical(double alpha, std::size_t n) {
  double c;
  if (alpha == 0.01)
    c = 1.62762;
  else if (alpha == 0.05)
    c = 1.35810;
  else
    throw std::invalid_argument("ks_critical: only alpha = 0.01 or 0.05 tabulated");
  return c / std::sqrt(static_cast<double>(n));
}

SubsampledKs ess_adjusted_ks(std::span<const double> series,
                             const std::function<double(double)>& cdf) {
  const double ess = effective_sample_size(series);
  std::size_t stride = 1;
  if (std::isfinite(ess) && ess >= 1.0)
    stride = static_cast<std::size_t>(
        std::ceil(static_cast<double>(series.size()) / ess));
  std::vector<double> sub;
  for (std::size_t i = 0; i < series.size(); i += stride)
    sub.push_back(series[i]);
  return {ks_statistic(sub, cdf), sub.size()};
}

std::vector<double> mode_fraction(std::span<const double> series,
                                  std::span<const double> boundaries) {
  require_length(series, 1, "mode_fraction");
  std::vector<double> fractions(boundaries.size() + 1, 0.0);
  for (double v : series) {
    std::size_t region = 0;
    while (region < boundaries.size() && v >= boundaries[region]) ++region;
    fractions[region] += 1.0;
  }
  for (double& f : fractions) f /= static_cast<double>(series.size());
  return fractions;
}

ChainSummary summarize(std::span<const double> series) {
  require_length(series, 10, "summarize");
  ChainSummary s;
  s.mean = mean_of(series);
  double ss = 0.0;
  for (double v : series) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(series.size() - 1));

  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < sorted.size() ? sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
                                 : sorted[i];
  };
  s.q025 = quantile(0.025);
  s.q50 = quantile(0.5);
  s.q975 = quantile(0.975);
  s.ess = effective_sample_size(series);
  s.act = std::isnan(s.ess) ? kNaN : static_cast<double>(series.size()) / s.ess;
  return s;
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("correlation: need equal series of length >= 2");
  const double ma = mean_of(a), mb = mean_of(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

double chi_square_statistic(std::span<const double> observed,
                            std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_statistic: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0))
      throw std::invalid_argument("chi_square_statistic: nonpositive expected count");
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace lss::diag
