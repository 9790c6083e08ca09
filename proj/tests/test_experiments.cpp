// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "lss/diagnostics.hpp"
#include "lss/discrete.hpp"
#include "lss/experiments.hpp"
#include "test_support.hpp"

using namespace lss;
using namespace lss::experiments;

TEST_CASE("mdp: degenerate single-component data keeps mu near zero") {
  // all observations at 0 and k = 1 (allocations frozen at component 1):
  // the conjugate posterior mean of mu_1 is exactly 0
  const std::vector<double> data(50, 0.0);
  const MdpHyper hyper;
  Rng rng(1);
  MdpState state = mdp_init(data, hyper, 1, rng);
  double acc = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    mdp_gibbs_iteration(state, data, hyper, 1, rng);
    CHECK(state.d == std::vector<long>(50, 1));  // k = 1 never moves them
    acc += state.mu[0];
  }
  // posterior sd of mu_1 is below 1/sqrt(s + n lambda) <= 1/sqrt(51 * 0.1)
  CHECK(std::fabs(acc / n) < 0.05);
}

TEST_CASE("mdp: window reachability invariant holds along a run") {
  Rng rng(2);
  const auto data = targets::generate_mdp_data(rng, 80);
  const MdpHyper hyper;
  const int k = 4;
  MdpState state = mdp_init(data, hyper, k, rng);
  for (int i = 0; i < 100; ++i) {
    mdp_gibbs_iteration(state, data, hyper, k, rng);
    const long max_d = *std::max_element(state.d.begin(), state.d.end());
    CHECK(state.instantiated() >= static_cast<std::size_t>(max_d + k));
    double prefix = 1.0;
    for (std::size_t j = 0; j < state.instantiated(); ++j) {
      CHECK(state.w[j] > 0.0);
      CHECK(state.w[j] <= prefix);
      prefix -= state.w[j];
      CHECK(prefix > -1e-12);
    }
  }
}

TEST_CASE("mdp predictive extends sticks until the residual mass is negligible") {
  MdpState state;
  state.v = {0.5};
  state.w = {0.5};
  state.mu = {0.0};
  state.lambda = {1.0};
  const MdpHyper hyper;
  Rng rng(30);
  mdp_predictive_draw(state, hyper, rng);
  double residual = 1.0;
  for (double v : state.v) residual *= 1.0 - v;
  CHECK(residual < 1e-10);
  CHECK(state.instantiated() > 1);
}

TEST_CASE("mdp predictive from a pinned single-component state") {
  MdpState state;
  state.v = {1.0 - 1e-12};  // all mass on component 1
  state.w = {1.0 - 1e-12};
  state.mu = {3.0};
  state.lambda = {4.0};  // sd 0.5
  const MdpHyper hyper;
  Rng rng(3);
  double acc = 0.0, ss = 0.0;
  const int n = 5000;
  std::vector<double> draws(n);
  for (auto& v : draws) v = mdp_predictive_draw(state, hyper, rng);
  for (double v : draws) acc += v;
  acc /= n;
  for (double v : draws) ss += (v - acc) * (v - acc);
  ss /= n - 1;
  CHECK(std::fabs(acc - 3.0) < 3.0 * 0.5 / std::sqrt(n));
  CHECK(std::fabs(std::sqrt(ss) - 0.5) < 0.02);
}

TEST_CASE("finite mixture: k = 1 freezes the component count") {
  Rng rng(4);
  const auto data = targets::generate_exponential_data(rng, 60);
  FiniteMixtureState state = finite_mixture_init(data.size(), rng);
  const FiniteMixtureHyper hyper;
  for (int i = 0; i < 200; ++i) {
    finite_mixture_iteration(state, data, hyper, 1, rng);
    CHECK(state.m == 1);
  }
}

TEST_CASE("finite mixture: weights stay on the simplex and d stays in range") {
  Rng rng(5);
  const auto data = targets::generate_exponential_data(rng, 100);
  FiniteMixtureState state = finite_mixture_init(data.size(), rng);
  const FiniteMixtureHyper hyper;
  for (int i = 0; i < 300; ++i) {
    const long m_before = state.m;
    finite_mixture_iteration(state, data, hyper, 3, rng);
    CHECK(std::labs(state.m - m_before) < 3);
    CHECK(state.w.size() == static_cast<std::size_t>(state.m));
    double total = 0.0;
    for (double w : state.w) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("finite mixture: frozen candidate window satisfies detailed balance") {
  // replicate the candidate construction and the window-kernel target on a
  // frozen chain, truncate, and check the reversibility identity exactly
  Rng rng(55);
  const auto data = targets::generate_exponential_data(rng, 40, 3.0);
  const double alpha = 1.0, poisson_rate = 1.0;
  const long top = 8;
  std::vector<std::vector<double>> cand(static_cast<std::size_t>(top) + 1);
  std::vector<double> log_jac(static_cast<std::size_t>(top) + 1, 0.0);
  cand[1] = {1.0};
  for (long z = 2; z <= top; ++z) {
    cand[static_cast<std::size_t>(z)] = cand[static_cast<std::size_t>(z - 1)];
    auto& w = cand[static_cast<std::size_t>(z)];
    const auto split = static_cast<std::size_t>(rng.next_double() * (z - 1));
    const double u = rng.next_double_open();
    const double piece = w[split];
    w[split] = u * piece;
    w.push_back((1.0 - u) * piece);
    log_jac[static_cast<std::size_t>(z)] =
        log_jac[static_cast<std::size_t>(z - 1)] + std::log(piece);
  }
  const DiscreteTarget frozen{
      [&](long z) {
        if (z < 1 || z > top) return kNegInf;
        const auto& w = cand[static_cast<std::size_t>(z)];
        double lp = static_cast<double>(z - 1) * std::log(poisson_rate) -
                    poisson_rate - std::lgamma(static_cast<double>(z)) +
                    std::lgamma(alpha * static_cast<double>(z)) -
                    static_cast<double>(z) * std::lgamma(alpha) +
                    log_jac[static_cast<std::size_t>(z)];
        for (double x : data) {
          double acc = 0.0;
          for (std::size_t j = 0; j < w.size(); ++j)
            acc += w[j] * static_cast<double>(j + 1) *
                   std::exp(-static_cast<double>(j + 1) * x);
          lp += std::log(acc);
        }
        return lp;
      },
      1};
  CHECK(detailed_balance_residual(frozen, top, 3) < 1e-12);
}

TEST_CASE("finite mixture on rate-3 exponential data recovers the density") {
  // the data cannot separate rate 3 from nearby blends of rates 2 and 4, so
  // the sharp checks are on the predictive density and the mass near rate 3
  Rng rng(106);
  const auto data = targets::generate_exponential_data(rng, 400, 3.0);
  FiniteMixtureState state = finite_mixture_init(data.size(), rng);
  const FiniteMixtureHyper hyper;

  std::map<long, int> m_histogram;
  const int grid_n = 200;
  std::vector<double> predictive(grid_n, 0.0);
  double mass_near_three = 0.0;
  int kept = 0;
  for (int i = 0; i < 3000; ++i) {
    finite_mixture_iteration(state, data, hyper, 3, rng);
    if (i < 500) continue;
    ++kept;
    ++m_histogram[state.m];
    for (std::size_t j = 1; j <= 3 && j < state.w.size(); ++j)
      mass_near_three += state.w[j];  // components 2, 3, 4
    for (int g = 0; g < grid_n; ++g) {
      const double x = 3.0 * g / (grid_n - 1);
      double f = 0.0;
      for (std::size_t j = 0; j < state.w.size(); ++j)
        f += state.w[j] * static_cast<double>(j + 1) *
             std::exp(-static_cast<double>(j + 1) * x);
      predictive[g] += f;
    }
  }
  const auto mode =
      std::max_element(m_histogram.begin(), m_histogram.end(),
                       [](const auto& a, const auto& b) { return a.second < b.second; });
  CHECK(mode->first >= 3);
  CHECK(mode->first <= 8);
  CHECK(mass_near_three / kept > 0.7);

  double l1 = 0.0;
  for (int g = 0; g < grid_n; ++g) {
    const double x = 3.0 * g / (grid_n - 1);
    l1 += std::fabs(predictive[g] / kept - 3.0 * std::exp(-3.0 * x)) *
          (3.0 / (grid_n - 1));
  }
  CHECK(l1 < 0.25);
}

TEST_CASE("state space: zero counts push theta toward zero") {
  targets::StateSpaceData data;
  data.rho = 0.8;
  data.x_true.assign(20, 0.0);
  data.counts.assign(20, 0);
  Rng rng(7);
  const auto result = state_space_run(data, 60, 20, 0.1, rng);
  CHECK(result.theta_samples.size() == 60);
  for (double theta : result.theta_samples) CHECK(theta > 0.0);
  // theta | x ~ gamma(0.5, rate 0.5 + sum exp(x)); with no counts the x block
  // settles low and the posterior mean sits far below 1
  CHECK(result.theta_posterior_mean < 0.3);
}

TEST_CASE("state space: sampler matches a quadrature oracle at n = 3") {
  targets::StateSpaceData data;
  data.rho = 0.8;
  data.theta_true = 1.0;
  data.x_true = {0.5, -0.3, 0.8};
  data.counts = {2, 0, 3};
  const double sum_y = 5.0;

  // theta integrates to a gamma factor; quadrature over the x grid gives
  // E[theta | y] = E[(0.5 + sum y) / (0.5 + sum exp x)]
  const double lo = -6.0, hi = 6.0;
  const int g = 110;
  const double dx = (hi - lo) / (g - 1);
  double z = 0.0, oracle_theta = 0.0;
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b)
      for (int c = 0; c < g; ++c) {
        const double x1 = lo + a * dx, x2 = lo + b * dx, x3 = lo + c * dx;
        const double sum_ex = std::exp(x1) + std::exp(x2) + std::exp(x3);
        const double log_ar =
            -0.5 * (x1 * x1 + (x2 - 0.8 * x1) * (x2 - 0.8 * x1) +
                    (x3 - 0.8 * x2) * (x3 - 0.8 * x2));
        const double w = std::exp(x1 * 2.0 + x3 * 3.0 + log_ar -
                                  (0.5 + sum_y) * std::log(0.5 + sum_ex));
        z += w;
        oracle_theta += w * (0.5 + sum_y) / (0.5 + sum_ex);
      }
  oracle_theta /= z;

  Rng rng(11);
  const auto result = state_space_run(data, 30000, 5000, 0.1, rng);
  CHECK(std::fabs(result.theta_posterior_mean - oracle_theta) < 0.05);
}

TEST_CASE("spike slab: zero-data posterior is the symmetric prior") {
  targets::SpikeSlabData data;
  data.n = 4;
  data.p = 2;
  data.design.assign(8, 0.0);
  data.response.assign(4, 0.0);
  data.beta_true.assign(2, 0.0);
  Rng rng(8);
  const auto result = spike_slab_run(data, 6000, 1000, 0.1, rng);
  REQUIRE(result.n_kept == 5000);
  for (double v : result.beta_samples) REQUIRE(std::isfinite(v));
  std::size_t positive = 0;
  for (std::size_t r = 0; r < result.n_kept; ++r)
    positive += result.beta_samples[r * 2] > 0.0;
  const double fraction = static_cast<double>(positive) / result.n_kept;
  CHECK(fraction > 0.42);
  CHECK(fraction < 0.58);
}

TEST_CASE("gp regression: both variants use the same posterior") {
  Rng data_rng(9);
  const auto data = targets::generate_gp_data(data_rng);
  Rng r1(10), r2(10);
  const auto standard =
      gp_regression_run(EllipticalVariant::standard, data, 600, 200, r1);
  const auto latent =
      gp_regression_run(EllipticalVariant::latent_slice, data, 600, 200, r2);
  REQUIRE(standard.posterior_mean.size() == 100);
  REQUIRE(latent.posterior_mean.size() == 100);
  // short runs agree loosely with each other and the truth
  CHECK(standard.rmse_to_truth < 0.35);
  CHECK(latent.rmse_to_truth < 0.35);
  CHECK(standard.mean_evals_per_step > 1.0);
}
