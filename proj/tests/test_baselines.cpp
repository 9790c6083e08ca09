// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lss/baselines.hpp"
#include "lss/diagnostics.hpp"
#include "lss/distributions.hpp"
#include "lss/targets.hpp"
#include "test_support.hpp"

using namespace lss;
using lss_test::FakeRng;

namespace {

double std_normal_log(double x) { return -0.5 * x * x; }

}  // namespace

TEST_CASE("stepping out with m = 1 is the bare placement") {
  FakeRng script{{0.3}};
  SteppingOutConfig cfg{2.0, 1};
  const auto [lo, hi] =
      stepping_out(1.0, -10.0, std_normal_log, cfg, script);
  // L = x - k(1 - U), R = x + kU
  CHECK(lo == doctest::Approx(1.0 - 2.0 * 0.7));
  CHECK(hi == doctest::Approx(1.0 + 2.0 * 0.3));
  CHECK(hi - lo == doctest::Approx(2.0));
}

TEST_CASE("flat target exhausts both budgets: width = k * m") {
  auto flat = [](double) { return 0.0; };
  Rng rng(1);
  SteppingOutConfig cfg{1.5, 8};
  for (int i = 0; i < 200; ++i) {
    const auto [lo, hi] = stepping_out(0.0, -1.0, flat, cfg, rng);
    CHECK(hi - lo == doctest::Approx(cfg.k * cfg.m));
  }
}

TEST_CASE("stepping out brackets the analytic slice of a unimodal target") {
  // the bracket must cover the slice (-edge, edge) except when an expansion
  // budget was exhausted, in which case the uncovered endpoint must still be
  // inside the slice (it stopped on budget, not on a construction bug)
  Rng rng(2);
  SteppingOutConfig cfg{1.0, 40};
  int budget_bound = 0;
  for (int i = 0; i < 1000; ++i) {
    // level near the mode, per the analytic-endpoint derivation
    const double x = uniform(rng, -1.0, 1.0);
    const double log_w = std_normal_log(x) + std::log(uniform(rng, 0.5, 1.0));
    const double edge = std::sqrt(-2.0 * log_w);  // slice is (-edge, edge)
    const auto [lo, hi] = stepping_out(x, log_w, std_normal_log, cfg, rng);
    if (lo > -edge || hi < edge) {
      ++budget_bound;
      if (lo > -edge) CHECK(std_normal_log(lo) > log_w);
      if (hi < edge) CHECK(std_normal_log(hi) > log_w);
    }
  }
  CHECK(budget_bound < 40);  // coverage holds in the large majority of trials
}

TEST_CASE("coincidence: m = 1 interval equals the degenerate-scale interval") {
  // one uniform drives both constructions; equality must be exact
  const double k = 1.7;
  Rng rng_a(3), rng_b(3);
  SteppingOutConfig cfg{k, 1};
  for (int i = 0; i < 10000; ++i) {
    const double x = -3.0 + 0.001 * i;
    const auto [lo, hi] = stepping_out(x, -5.0, std_normal_log, cfg, rng_a);
    const double l = sample_latent_location(rng_b, x, k);
    const double a = l - 0.5 * k;
    const double b = l + 0.5 * k;
    CHECK(lo == a);
    CHECK(hi == b);
  }
}

TEST_CASE("slice_step_1d: standard normal moments") {
  Rng rng(4);
  SteppingOutConfig cfg{1.0, 10};
  double x = 0.0;
  const int n = 20000;
  std::vector<double> xs(n);
  for (auto& v : xs) {
    x = slice_step_1d(x, std_normal_log, cfg, rng);
    v = x;
  }
  const auto s = diag::summarize(xs);
  CHECK(std::fabs(s.mean) < 0.05);
  CHECK(std::fabs(s.sd - 1.0) < 0.05);
}

TEST_CASE("slice_step_1d on a flat target is a uniform draw") {
  auto unit_flat = [](double v) { return v > 0.0 && v < 1.0 ? 0.0 : kNegInf; };
  Rng rng(5);
  SteppingOutConfig cfg{0.5, 6};
  double x = 0.5;
  std::vector<double> xs(10000);
  for (auto& v : xs) {
    x = slice_step_1d(x, unit_flat, cfg, rng);
    v = x;
  }
  const double ks = diag::ks_statistic(xs, [](double v) {
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  });
  CHECK(ks < diag::ks_critical(0.01, xs.size()));
}

TEST_CASE("gibbs sweep in one dimension reduces to slice_step_1d") {
  const LogDensity target = targets::isotropic_gaussian(1);
  SteppingOutConfig cfg{1.0, 10};
  Rng r1(6), r2(6);
  std::vector<double> y{0.3};
  gibbs_sweep_slice(y, target, cfg, r1);
  const double direct = slice_step_1d(0.3, std_normal_log, cfg, r2);
  CHECK(y[0] == direct);
}

TEST_CASE("independent product target: coordinates decorrelate") {
  const LogDensity target = targets::isotropic_gaussian(2);
  SteppingOutConfig cfg{1.0, 10};
  Rng rng(7);
  std::vector<double> y{0.0, 0.0};
  const int n = 20000;
  std::vector<double> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    gibbs_sweep_slice(y, target, cfg, rng);
    a[i] = y[0];
    b[i] = y[1];
  }
  CHECK(std::fabs(diag::correlation(a, b)) < 0.05);
}

TEST_CASE("strong dependence: sweep autocorrelation beats the block update") {
  // rho = 0.95 bivariate normal, equal budgets and seeds: the per-coordinate
  // sweep should show the larger lag-1 autocorrelation of y1
  const LogDensity target = targets::correlated_gaussian(0.95);
  const int n = 20000;

  Rng rng_sweep(8);
  SteppingOutConfig cfg{1.0, 10};
  std::vector<double> y{0.0, 0.0};
  std::vector<double> sweep_series(n);
  for (auto& v : sweep_series) {
    gibbs_sweep_slice(y, target, cfg, rng_sweep);
    v = y[0];
  }

  Rng rng_block(8);
  LatentSliceConfig block_cfg;
  block_cfg.lambda = 0.1;
  LatentState state{{0.0, 0.0}, {1.0, 1.0}, target(std::vector<double>{0.0, 0.0})};
  std::vector<double> block_series(n);
  for (auto& v : block_series) {
    step(state, target, block_cfg, rng_block);
    v = state.y[0];
  }

  const double sweep_rho = diag::autocorrelation(sweep_series, 1)[1];
  const double block_rho = diag::autocorrelation(block_series, 1)[1];
  CHECK(sweep_rho > block_rho);
}

TEST_CASE("funnel sweeps stay in support with no NaN") {
  const LogDensity target = targets::funnel();
  SteppingOutConfig cfg{2.0, 10};
  Rng rng(12);
  std::vector<double> y(10, 0.0);
  for (int sweep = 0; sweep < 10000; ++sweep) {
    gibbs_sweep_slice(y, target, cfg, rng);
    for (double v : y) REQUIRE(std::isfinite(v));
  }
  REQUIRE(std::isfinite(target(y)));
}

TEST_CASE("ellipse point identities") {
  const std::vector<double> f{1.0, -2.0, 0.5};
  const std::vector<double> nu{0.3, 0.7, -1.1};
  std::vector<double> out(3);
  ellipse_point(f, nu, 0.0, out);
  CHECK(out == f);  // cos 0 = 1, sin 0 = 0: exact
  ellipse_point(f, nu, std::numbers::pi / 2.0, out);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(out[i] == doctest::Approx(nu[i]).epsilon(1e-15));
}

TEST_CASE("elliptical prior invariance with a constant likelihood") {
  // with log L = 0 every proposal is accepted and the prior marginal must be
  // preserved for both variants
  const std::size_t n = 4;
  Matrix sigma(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sigma.at(i, j) = (i == j ? 1.0 : 0.0) + 0.5;
  const Matrix chol = cholesky_lower(sigma);
  auto flat = [](std::span<const double>) { return 0.0; };

  for (const auto variant :
       {EllipticalVariant::standard, EllipticalVariant::latent_slice}) {
    Rng rng(9);
    EllipticalConfig cfg;
    cfg.variant = variant;
    EllipseState state;
    state.f.assign(n, 0.0);
    state.log_L_f = 0.0;
    std::vector<double> first(10000);
    for (auto& v : first) {
      elliptical_step(state, chol, flat, cfg, rng);
      v = state.f[0];
    }
    const auto ks = diag::ess_adjusted_ks(first, [&](double x) {
      return lss_test::normal_cdf(x, 0.0, std::sqrt(sigma.at(0, 0)));
    });
    CHECK(ks.statistic < diag::ks_critical(0.01, ks.n_subsample));
  }
}

TEST_CASE("elliptical accepted states satisfy the slice inequality") {
  const std::size_t n = 3;
  Matrix sigma(n, n);
  for (std::size_t i = 0; i < n; ++i) sigma.at(i, i) = 1.0;
  const Matrix chol = cholesky_lower(sigma);
  auto loglik = [](std::span<const double> f) {
    double ss = 0.0;
    for (double v : f) ss += (v - 1.0) * (v - 1.0);
    return -ss;
  };
  Rng rng(10);
  EllipticalConfig cfg;
  cfg.variant = EllipticalVariant::latent_slice;
  EllipseState state;
  state.f.assign(n, 0.0);
  state.log_L_f = loglik(state.f);
  for (int i = 0; i < 2000; ++i) {
    const double before = state.log_L_f;
    elliptical_step(state, chol, loglik, cfg, rng);
    CHECK(state.log_L_f == doctest::Approx(loglik(state.f)));
    CHECK(std::isfinite(before));
  }
}
