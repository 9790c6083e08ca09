// Apache License, Version 2.0, refer to LICENSE.txt
//
// Comparison kernels: the single-variable slice sampler with stepping-out
// and shrinkage (Neal 2003, Fig. 3), a per-coordinate Gibbs sweep of it, and
// elliptical slice sampling in the standard bracket-shrink form (Murray,
// Adams, MacKay 2010) and in a variant whose angle is drawn by the latent
// slice machinery.

#ifndef LSS_BASELINES_HPP
#define LSS_BASELINES_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lss/latent_slice.hpp"
#include "lss/linalg.hpp"

namespace lss {

struct SteppingOutConfig {
  double k = 1.0;  // initial interval width
  int m = 10;      // max expansion count (m = 1: no expansion)
};

//! Neal's stepping-out interval about x at slice level log_w.  The initial
//! bracket is placed with one uniform draw; J/K expansion budgets are drawn
//! only when m > 1 (with m = 1 they are identically zero), so the m = 1
//! construction consumes exactly one uniform and coincides with the latent
//! slice interval built from a scale degenerate at k.
template <class F, class R>
std::pair<double, double> stepping_out(double x, double log_w, F&& log_target,
                                       const SteppingOutConfig& cfg, R& rng) {
  if (!(cfg.k > 0.0) || cfg.m < 1)
    throw std::invalid_argument("stepping_out: need k > 0 and m >= 1");
  const double placement = x + cfg.k * (rng.next_double() - 0.5);
  double lo = placement - 0.5 * cfg.k;
  double hi = placement + 0.5 * cfg.k;
  if (cfg.m > 1) {
    int j = static_cast<int>(cfg.m * rng.next_double());
    int k_budget = cfg.m - 1 - j;
    while (j > 0 && log_target(lo) > log_w) {
      lo -= cfg.k;
      --j;
    }
    while (k_budget > 0 && log_target(hi) > log_w) {
      hi += cfg.k;
      --k_budget;
    }
  }
  return {lo, hi};
}

//! One single-variable slice update: level, step out, shrink within (L, R).
template <class F, class R>
double slice_step_1d(double x, F&& log_target, const SteppingOutConfig& cfg,
                     R& rng, int max_shrink_iters = 10000) {
  const double log_pi_x = log_target(x);
  const double log_w = sample_slice_level(rng, log_pi_x);
  auto [lo, hi] = stepping_out(x, log_w, log_target, cfg, rng);
  for (int iter = 0; iter < max_shrink_iters; ++iter) {
    const double proposal = lo + (hi - lo) * rng.next_double();
    if (log_target(proposal) > log_w) return proposal;
    if (proposal < x)
      lo = proposal;
    else
      hi = proposal;
  }
  throw std::runtime_error("slice_step_1d: shrinkage stalled");
}

//! Per-coordinate Gibbs sweep of slice_step_1d over the full conditionals of
//! a joint target, in index order.
template <class R>
void gibbs_sweep_slice(std::vector<double>& y, const LogDensity& target,
                       const SteppingOutConfig& cfg, R& rng) {
  std::vector<double> point = y;
  for (std::size_t j = 0; j < y.size(); ++j) {
    auto conditional = [&](double v) {
      point[j] = v;
      return target(point);
    };
    const double updated = slice_step_1d(y[j], conditional, cfg, rng);
    point[j] = updated;
    y[j] = updated;
  }
}

enum class EllipticalVariant { standard, latent_slice };

struct EllipticalConfig {
  EllipticalVariant variant = EllipticalVariant::standard;
  double lambda_theta = 1.0 / std::numbers::pi;  // latent variant: E[s] = 2*pi
  int max_shrink_iters = 10000;
};

struct EllipseState {
  std::vector<double> f;
  double log_L_f = 0.0;  // cached log-likelihood at f
};

//! out = f cos(theta) + nu sin(theta); theta = 0 reproduces f exactly and
//! theta = pi/2 reproduces nu up to rounding of sin/cos.
inline void ellipse_point(std::span<const double> f, std::span<const double> nu,
                          double theta, std::span<double> out) {
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * c + nu[i] * s;
}

//! One elliptical slice update of state.f for the posterior
//! N(f | 0, Sigma) * L(f), given the lower Cholesky factor of Sigma.
//! Returns the number of likelihood evaluations spent on proposals.
//!
//! standard: theta ~ U(0, 2pi), bracket [theta - 2pi, theta], shrink toward 0.
//! latent_slice: theta is drawn by the univariate latent slice machinery
//! anchored at theta0 = 0 (the current f), membership predicate
//! log L(f cos t + nu sin t) > log w; the predicate is 2pi-periodic so the
//! angle needs no explicit wrap.
template <class R>
int elliptical_step(EllipseState& state, const Matrix& chol_sigma,
                    const std::function<double(std::span<const double>)>& log_lik,
                    const EllipticalConfig& cfg, R& rng) {
  const std::size_t n = state.f.size();
  if (chol_sigma.rows != n)
    throw std::invalid_argument("elliptical_step: Cholesky factor size mismatch");
  if (!std::isfinite(state.log_L_f))
    throw std::runtime_error("elliptical_step: log-likelihood cache not finite");

  std::vector<double> z(n);
  for (auto& v : z) v = normal(rng, 0.0, 1.0);
  const std::vector<double> nu = lower_matvec(chol_sigma, z);
  const double log_w = state.log_L_f + std::log(rng.next_double_open());

  std::vector<double> proposal(n);
  double log_L_proposal = 0.0;
  auto at_angle = [&](double theta) {
    ellipse_point(state.f, nu, theta, proposal);
    log_L_proposal = log_lik(proposal);
    return log_L_proposal > log_w;
  };

  int evals = 0;
  if (cfg.variant == EllipticalVariant::standard) {
    double theta = 2.0 * std::numbers::pi * rng.next_double();
    double theta_lo = theta - 2.0 * std::numbers::pi;
    double theta_hi = theta;
    for (int iter = 0; iter < cfg.max_shrink_iters; ++iter) {
      ++evals;
      if (at_angle(theta)) {
        state.f = proposal;
        state.log_L_f = log_L_proposal;
        return evals;
      }
      if (theta < 0.0)
        theta_lo = theta;
      else
        theta_hi = theta;
      theta = theta_lo + (theta_hi - theta_lo) * rng.next_double();
    }
  } else {
    const double s0 = 2.0 / cfg.lambda_theta;
    const double location = sample_latent_location(rng, 0.0, s0);
    const double scale = sample_scale_conditional(rng, location, 0.0, cfg.lambda_theta);
    double theta_lo = location - 0.5 * scale;
    double theta_hi = location + 0.5 * scale;
    for (int iter = 0; iter < cfg.max_shrink_iters; ++iter) {
      ++evals;
      const double theta = theta_lo + (theta_hi - theta_lo) * rng.next_double();
      if (at_angle(theta)) {
        state.f = proposal;
        state.log_L_f = log_L_proposal;
        return evals;
      }
      if (theta < 0.0)
        theta_lo = theta;
      else
        theta_hi = theta;
    }
  }
  throw std::runtime_error("elliptical_step: angle shrinkage stalled");
}

}  // namespace lss

#endif
