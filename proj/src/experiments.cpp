// Apache License, Version 2.0, refer to LICENSE.txt

#include "lss/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lss/discrete.hpp"
#include "lss/distributions.hpp"
#include "lss/util.hpp"

namespace lss::experiments {

namespace {

// log N(x | mu, 1/lambda) up to the -log(2 pi)/2 constant
double log_gauss_prec(double x, double mu, double lambda) {
  const double d = x - mu;
  return 0.5 * std::log(lambda) - 0.5 * lambda * d * d;
}

double log_shifted_poisson(long m, double rate) {
  // pi(M) = rate^{M-1} e^{-rate} / (M-1)!,  M = 1, 2, ...
  return static_cast<double>(m - 1) * std::log(rate) - rate -
         std::lgamma(static_cast<double>(m));
}

double log_symmetric_dirichlet(std::span<const double> w, double alpha) {
  const double m = static_cast<double>(w.size());
  double acc = std::lgamma(alpha * m) - m * std::lgamma(alpha);
  if (alpha != 1.0)
    for (double v : w) acc += (alpha - 1.0) * std::log(v);
  return acc;
}

void mdp_append_component(MdpState& state, const MdpHyper& hyper, Rng& rng) {
  state.v.push_back(beta(rng, 1.0, hyper.alpha));
  state.mu.push_back(normal(rng, 0.0, 1.0 / std::sqrt(hyper.s)));
  state.lambda.push_back(gamma(rng, hyper.tau, 1.0 / hyper.tau));
  state.w.push_back(0.0);  // recomputed by the caller
}

void mdp_recompute_weights(MdpState& state) {
  double remaining = 1.0;
  for (std::size_t j = 0; j < state.v.size(); ++j) {
    state.w[j] = state.v[j] * remaining;
    remaining *= 1.0 - state.v[j];
  }
}

void mdp_ensure_instantiated(MdpState& state, const MdpHyper& hyper,
                             std::size_t count, Rng& rng) {
  bool grew = false;
  while (state.instantiated() < count) {
    mdp_append_component(state, hyper, rng);
    grew = true;
  }
  if (grew) mdp_recompute_weights(state);
}

}  // namespace

MdpState mdp_init(const std::vector<double>& data, const MdpHyper& hyper, int k,
                  Rng& rng) {
  if (k < 1) throw std::invalid_argument("mdp_init: k < 1");
  MdpState state;
  state.d.assign(data.size(), 1);
  mdp_ensure_instantiated(state, hyper, static_cast<std::size_t>(1 + k), rng);
  return state;
}

void mdp_gibbs_iteration(MdpState& state, const std::vector<double>& data,
                         const MdpHyper& hyper, int k, Rng& rng) {
  const std::size_t n_components = state.instantiated();
  std::vector<long> counts(n_components, 0);
  std::vector<double> sums(n_components, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t j = static_cast<std::size_t>(state.d[i] - 1);
    ++counts[j];
    sums[j] += data[i];
  }

  // conjugate component updates; empty components fall back to their priors
  for (std::size_t j = 0; j < n_components; ++j) {
    const double nj = static_cast<double>(counts[j]);
    const double precision = hyper.s + nj * state.lambda[j];
    const double mean = state.lambda[j] * sums[j] / precision;
    state.mu[j] = normal(rng, mean, 1.0 / std::sqrt(precision));

    double rss = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (state.d[i] == static_cast<long>(j + 1)) {
        const double d = data[i] - state.mu[j];
        rss += d * d;
      }
    state.lambda[j] =
        gamma(rng, hyper.tau + 0.5 * nj, 1.0 / (hyper.tau + 0.5 * rss));
  }

  // stick updates: v_j | d ~ beta(1 + n_j, alpha + count beyond j)
  std::vector<long> beyond(n_components + 1, 0);
  for (std::size_t j = n_components; j-- > 0;)
    beyond[j] = beyond[j + 1] + counts[j];
  for (std::size_t j = 0; j < n_components; ++j)
    state.v[j] = beta(rng, 1.0 + static_cast<double>(counts[j]),
                      hyper.alpha + static_cast<double>(beyond[j + 1]));
  mdp_recompute_weights(state);

  // allocations through the window kernel; components instantiated on demand
  for (std::size_t i = 0; i < data.size(); ++i) {
    mdp_ensure_instantiated(
        state, hyper, static_cast<std::size_t>(state.d[i] + k), rng);
    const double x = data[i];
    DiscreteTarget target{
        [&](long j) {
          return std::log(state.w[static_cast<std::size_t>(j - 1)]) +
                 log_gauss_prec(x, state.mu[static_cast<std::size_t>(j - 1)],
                                state.lambda[static_cast<std::size_t>(j - 1)]);
        },
        1};
    state.d[i] = discrete_step(state.d[i], target, k, rng);
  }
  const long max_d = *std::max_element(state.d.begin(), state.d.end());
  mdp_ensure_instantiated(state, hyper, static_cast<std::size_t>(max_d + k), rng);
}

double mdp_predictive_draw(MdpState& state, const MdpHyper& hyper, Rng& rng) {
  // extend sticks until the unassigned mass is negligible
  double residual = 1.0;
  for (double v : state.v) residual *= 1.0 - v;
  while (residual >= 1e-10) {
    mdp_append_component(state, hyper, rng);
    residual *= 1.0 - state.v.back();
  }
  mdp_recompute_weights(state);
  const std::size_t j = categorical(rng, state.w);
  return normal(rng, state.mu[j], 1.0 / std::sqrt(state.lambda[j]));
}

FiniteMixtureState finite_mixture_init(std::size_t n_obs, Rng&) {
  FiniteMixtureState state;
  state.m = 1;
  state.w = {1.0};
  state.d.assign(n_obs, 1);
  return state;
}

void finite_mixture_iteration(FiniteMixtureState& state,
                              const std::vector<double>& data,
                              const FiniteMixtureHyper& hyper, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("finite_mixture_iteration: k < 1");
  const std::size_t m = static_cast<std::size_t>(state.m);

  // allocations: d_i proportional to w_j * j * exp(-j x_i), j = 1..M
  if (!data.empty()) {
    std::vector<double> weight(m);
    for (std::size_t i = 0; i < data.size(); ++i) {
      double best = kNegInf;
      for (std::size_t j = 0; j < m; ++j) {
        const double jj = static_cast<double>(j + 1);
        weight[j] = std::log(state.w[j]) + std::log(jj) - jj * data[i];
        best = std::max(best, weight[j]);
      }
      for (double& lw : weight) lw = std::exp(lw - best);
      state.d[i] = static_cast<long>(categorical(rng, weight)) + 1;
    }
  }

  // weights: w | d, M ~ Dirichlet(alpha + counts)
  std::vector<double> dir_alpha(m, hyper.alpha);
  for (long di : state.d) dir_alpha[static_cast<std::size_t>(di - 1)] += 1.0;
  state.w = dirichlet(rng, dir_alpha);

  // M move: realize the whole candidate window from the current weights once
  // (split toward larger M, combine toward smaller), freeze it, and run the
  // window kernel on the marginal-d posterior.  The conditional-prior choice
  // masses (1/j per link, either direction) cancel from all ratios; what
  // remains is the shifted Poisson prior, the Dirichlet density, the
  // likelihood and the change-of-variables factor of each split link (the
  // weight that was split).  Dropping that last factor makes the no-data
  // M-chain a flat random walk instead of recovering the prior.
  const long z_lo = std::max(1L, state.m - k + 1);
  const long z_hi = state.m + k - 1;
  std::vector<std::vector<double>> candidates(
      static_cast<std::size_t>(z_hi - z_lo + 1));
  std::vector<double> log_jacobian(candidates.size(), 0.0);
  auto candidate = [&](long z) -> std::vector<double>& {
    return candidates[static_cast<std::size_t>(z - z_lo)];
  };
  auto log_jac = [&](long z) -> double& {
    return log_jacobian[static_cast<std::size_t>(z - z_lo)];
  };
  candidate(state.m) = state.w;
  for (long z = state.m - 1; z >= z_lo; --z) {
    std::vector<double> next = candidate(z + 1);
    const double last = next.back();
    next.pop_back();
    const std::size_t into =
        static_cast<std::size_t>(rng.next_double() * static_cast<double>(z));
    next[into] += last;
    // merged weight = split weight of the reverse z -> z+1 link
    log_jac(z) = log_jac(z + 1) - std::log(next[into]);
    candidate(z) = std::move(next);
  }
  for (long z = state.m + 1; z <= z_hi; ++z) {
    std::vector<double> next = candidate(z - 1);
    const std::size_t split =
        static_cast<std::size_t>(rng.next_double() * static_cast<double>(z - 1));
    const double u = rng.next_double_open();
    const double piece = next[split];
    next[split] = u * piece;
    next.push_back((1.0 - u) * piece);
    log_jac(z) = log_jac(z - 1) + std::log(piece);
    candidate(z) = std::move(next);
  }

  DiscreteTarget m_target{
      [&](long z) {
        const std::vector<double>& w = candidate(z);
        double log_post = log_shifted_poisson(z, hyper.poisson_rate) +
                          log_symmetric_dirichlet(w, hyper.alpha) + log_jac(z);
        for (double x : data) {
          double best = kNegInf;
          double acc = 0.0;
          std::vector<double> terms(w.size());
          for (std::size_t j = 0; j < w.size(); ++j) {
            const double jj = static_cast<double>(j + 1);
            terms[j] = std::log(w[j]) + std::log(jj) - jj * x;
            best = std::max(best, terms[j]);
          }
          for (double t : terms) acc += std::exp(t - best);
          log_post += best + std::log(acc);
        }
        return log_post;
      },
      1};
  state.m = discrete_step(state.m, m_target, k, rng);
  state.w = candidate(state.m);
}

GpRunResult gp_regression_run(EllipticalVariant variant,
                              const targets::GpData& data, std::size_t n_iter,
                              std::size_t burn_in, Rng& rng) {
  if (!(n_iter > burn_in))
    throw std::invalid_argument("gp_regression_run: n_iter <= burn_in");
  const std::size_t n = data.inputs.size();
  const Matrix chol = cholesky_lower(targets::gp_covariance(data.inputs));
  const LogDensity loglik = targets::gp_log_likelihood(data);

  EllipticalConfig cfg;
  cfg.variant = variant;
  EllipseState state;
  state.f.assign(n, 0.0);
  state.log_L_f = loglik(state.f);

  std::vector<double> accumulated(n, 0.0);
  std::size_t kept = 0;
  long evals = 0;
  for (std::size_t t = 1; t <= n_iter; ++t) {
    evals += elliptical_step(state, chol, loglik.eval, cfg, rng);
    if (t > burn_in) {
      for (std::size_t i = 0; i < n; ++i) accumulated[i] += state.f[i];
      ++kept;
    }
  }

  GpRunResult result;
  result.posterior_mean.resize(n);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    result.posterior_mean[i] = accumulated[i] / static_cast<double>(kept);
    const double d = result.posterior_mean[i] - data.f_true[i];
    rss += d * d;
  }
  result.rmse_to_truth = std::sqrt(rss / static_cast<double>(n));
  result.mean_evals_per_step =
      static_cast<double>(evals) / static_cast<double>(n_iter);
  return result;
}

StateSpaceRunResult state_space_run(const targets::StateSpaceData& data,
                                    std::size_t n_iter, std::size_t burn_in,
                                    double lambda, Rng& rng) {
  if (!(n_iter > burn_in))
    throw std::invalid_argument("state_space_run: n_iter <= burn_in");
  const std::size_t n = data.counts.size();
  double sum_counts = 0.0;
  for (long c : data.counts) sum_counts += static_cast<double>(c);

  LatentSliceConfig cfg;
  cfg.lambda = lambda;
  LatentState state;
  // data-informed start on the (theta, level-of-x) ridge: shape from the
  // counts, level normalized so sum exp(x) = sum y.  theta and the x level
  // are only weakly identified (through the autoregressive prior), and the
  // ridge mixes far slower than the 2000-iteration scale of the runs.
  state.y.resize(n);
  double level = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.y[i] = std::log(static_cast<double>(data.counts[i]) + 0.5);
    level += static_cast<double>(data.counts[i]) + 0.5;
  }
  double count_total = 0.0;
  for (long c : data.counts) count_total += static_cast<double>(c);
  const double shift = std::log(level / std::max(count_total, 1.0));
  for (auto& x : state.y) x -= shift;
  state.s.assign(n, cfg.s_init);

  double theta = 1.0;
  StateSpaceRunResult result;
  result.theta_samples.reserve(n_iter);

  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < n_iter; ++t) {
    const LogDensity target = targets::state_space_log_density(data, theta);
    state.log_pi_y = target(state.y);  // theta changed since the last step
    step(state, target, cfg, rng);

    double sum_exp = 0.0;
    for (double x : state.y) sum_exp += std::exp(x);
    theta = gamma(rng, 0.5 + sum_counts, 1.0 / (0.5 + sum_exp));
    result.theta_samples.push_back(theta);
  }
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  double acc = 0.0;
  for (std::size_t t = burn_in; t < n_iter; ++t) acc += result.theta_samples[t];
  result.theta_posterior_mean = acc / static_cast<double>(n_iter - burn_in);
  result.x_last = state.y;
  return result;
}

SpikeSlabRunResult spike_slab_run(const targets::SpikeSlabData& data,
                                  std::size_t n_iter, std::size_t burn_in,
                                  double lambda, Rng& rng) {
  const LogDensity target = targets::spike_slab_log_density(data);
  LatentSliceConfig cfg;
  cfg.lambda = lambda;
  std::vector<double> init(data.p, 0.0);
  ChainOutput chain = run_chain(target, init, cfg, n_iter, burn_in, 1, rng);

  SpikeSlabRunResult result;
  result.n_kept = chain.n_kept;
  result.p = data.p;
  result.beta_samples = std::move(chain.samples);
  result.wall_time_s = chain.wall_time_s;
  result.posterior_mean.assign(data.p, 0.0);
  for (std::size_t r = 0; r < result.n_kept; ++r)
    for (std::size_t j = 0; j < data.p; ++j)
      result.posterior_mean[j] += result.beta_samples[r * data.p + j];
  for (double& v : result.posterior_mean)
    v /= static_cast<double>(result.n_kept);
  return result;
}

}  // namespace lss::experiments
