// Apache License, Version 2.0, refer to LICENSE.txt

#include "lss/targets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lss/distributions.hpp"
#include "lss/parallel.hpp"
#include "lss/util.hpp"

namespace lss::targets {

namespace {

void check_dim(std::span<const double> y, int dim, const char* who) {
  if (static_cast<int>(y.size()) != dim)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

LogDensity bimodal_mixture() {
  return {1, [](std::span<const double> y) {
            check_dim(y, 1, "bimodal_mixture");
            const double v = y[0];
            return log_add(-0.5 * (v + 10.0) * (v + 10.0),
                           -0.5 * (v - 10.0) * (v - 10.0));
          }};
}

LogDensity correlated_gaussian(double rho) {
  if (!(std::fabs(rho) < 1.0))
    throw std::invalid_argument("correlated_gaussian: |rho| must be < 1");
  const double denom = 1.0 - rho * rho;
  return {2, [rho, denom](std::span<const double> y) {
            check_dim(y, 2, "correlated_gaussian");
            return -0.5 * (y[0] * y[0] - 2.0 * rho * y[0] * y[1] + y[1] * y[1]) /
                   denom;
          }};
}

LogDensity isotropic_gaussian(int dim) {
  if (dim < 1) throw std::invalid_argument("isotropic_gaussian: dim < 1");
  return {dim, [dim](std::span<const double> y) {
            check_dim(y, dim, "isotropic_gaussian");
            double ss = 0.0;
            for (double v : y) ss += v * v;
            return -0.5 * ss;
          }};
}

LogDensity funnel() {
  return {10, [](std::span<const double> y) {
            check_dim(y, 10, "funnel");
            const double v = y[0];
            double ss = 0.0;
            for (std::size_t i = 1; i < 10; ++i) ss += y[i] * y[i];
            return -v * v / 18.0 - 4.5 * v - 0.5 * std::exp(-v) * ss;
          }};
}

GpData generate_gp_data(Rng& rng, std::size_t n, double noise_sd) {
  GpData data;
  data.noise_sd = noise_sd;
  data.inputs.resize(n);
  data.f_true.resize(n);
  data.observed.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
    data.inputs[i] = x;
    data.f_true[i] = std::sin(4.0 * std::numbers::pi * x) +
                     std::sin(7.0 * std::numbers::pi * x);
    data.observed[i] = data.f_true[i] + normal(rng, 0.0, noise_sd);
  }
  return data;
}

Matrix gp_covariance(const std::vector<double>& inputs, double psi, double tau) {
  const std::size_t n = inputs.size();
  Matrix sigma(n, n);
  const double tau2 = tau * tau;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = inputs[i] - inputs[j];
      sigma.at(i, j) = tau2 * std::exp(-d * d / (2.0 * psi * psi));
    }
    sigma.at(i, i) += 1e-8 * tau2;
  }
  return sigma;
}

LogDensity gp_log_likelihood(const GpData& data) {
  const auto dim = static_cast<int>(data.observed.size());
  const double inv_var = 1.0 / (data.noise_sd * data.noise_sd);
  const std::vector<double> obs = data.observed;
  return {dim, [dim, inv_var, obs](std::span<const double> f) {
            check_dim(f, dim, "gp_log_likelihood");
            const double ss = par::blocked_sum(obs.size(), [&](std::size_t i) {
              const double r = obs[i] - f[i];
              return r * r;
            });
            return -0.5 * inv_var * ss;
          }};
}

StateSpaceData generate_state_space_data(Rng& rng, std::size_t n, double rho,
                                         double sigma, double theta) {
  StateSpaceData data;
  data.rho = rho;
  data.theta_true = theta;
  data.x_true.resize(n);
  data.counts.resize(n);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    prev = rho * prev + sigma * normal(rng, 0.0, 1.0);
    data.x_true[i] = prev;
    data.counts[i] = poisson(rng, theta * std::exp(prev));
  }
  return data;
}

LogDensity state_space_log_density(const StateSpaceData& data, double theta) {
  const auto dim = static_cast<int>(data.counts.size());
  const double rho = data.rho;
  const std::vector<long> counts = data.counts;
  return {dim, [dim, rho, theta, counts](std::span<const double> x) {
            check_dim(x, dim, "state_space_log_density");
            return par::blocked_sum(x.size(), [&](std::size_t i) {
              const double prev = i == 0 ? 0.0 : x[i - 1];
              const double d = x[i] - rho * prev;
              return x[i] * static_cast<double>(counts[i]) -
                     theta * std::exp(x[i]) - 0.5 * d * d;
            });
          }};
}

SpikeSlabData generate_spike_slab_data(Rng& rng, std::size_t n, std::size_t p) {
  SpikeSlabData data;
  data.n = n;
  data.p = p;
  data.design.resize(n * p);
  for (auto& v : data.design) v = normal(rng, 0.0, 1.0);
  data.beta_true.assign(p, 0.0);
  if (p > 0) data.beta_true[0] = 1.0;
  for (std::size_t j = 1; j < 5 && j < p; ++j) data.beta_true[j] = 5.0;
  data.response.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < p; ++j)
      mean += data.design[i * p + j] * data.beta_true[j];
    data.response[i] = mean + normal(rng, 0.0, 1.0);
  }
  return data;
}

LogDensity spike_slab_log_density(const SpikeSlabData& data, double sigma1,
                                  double sigma2) {
  const auto dim = static_cast<int>(data.p);
  const double log_s1 = std::log(sigma1), log_s2 = std::log(sigma2);
  const double inv_v1 = 1.0 / (sigma1 * sigma1), inv_v2 = 1.0 / (sigma2 * sigma2);
  return {dim, [dim, d = data, log_s1, log_s2, inv_v1, inv_v2](
                   std::span<const double> beta) {
            check_dim(beta, dim, "spike_slab_log_density");
            const std::size_t n = d.n, p = d.p;
            const double rss = par::blocked_sum(n, [&](std::size_t i) {
              const double* row = d.design.data() + i * p;
              double fit = 0.0;
              for (std::size_t j = 0; j < p; ++j) fit += row[j] * beta[j];
              const double r = d.response[i] - fit;
              return r * r;
            });
            const double log_prior = par::blocked_sum(p, [&](std::size_t j) {
              const double b2 = beta[j] * beta[j];
              return log_add(-log_s1 - 0.5 * b2 * inv_v1,
                             -log_s2 - 0.5 * b2 * inv_v2);
            });
            return -0.5 * rss + log_prior;
          }};
}

std::vector<double> generate_mdp_data(Rng& rng, std::size_t n) {
  static constexpr double kMeans[3] = {-4.0, 0.0, 8.0};
  std::vector<double> data(n);
  for (auto& v : data) {
    const double u = rng.next_double();
    const int comp = u < 1.0 / 3.0 ? 0 : (u < 2.0 / 3.0 ? 1 : 2);
    v = normal(rng, kMeans[comp], 1.0);
  }
  return data;
}

std::vector<double> generate_exponential_data(Rng& rng, std::size_t n,
                                              double rate) {
  std::vector<double> data(n);
  for (auto& v : data) v = shifted_exponential(rng, rate, 0.0);
  return data;
}

}  // namespace lss::targets
