// Apache License, Version 2.0, refer to LICENSE.txt
//
// Gibbs-sampler drivers that compose the kernels: the Dirichlet-process
// mixture with window-kernel allocation updates, the exponential mixture
// with an unknown number of components, Gaussian-process regression via the
// elliptical kernels, and the block latent slice updates for the state-space
// and spike-and-slab posteriors.

#ifndef LSS_EXPERIMENTS_HPP
#define LSS_EXPERIMENTS_HPP

#include <cstddef>
#include <vector>

#include "lss/baselines.hpp"
#include "lss/rng.hpp"
#include "lss/targets.hpp"

namespace lss::experiments {

// ---- Mixture of Dirichlet process -------------------------------------------

struct MdpHyper {
  double tau = 0.5;    // gamma(tau, tau) prior on the precisions
  double s = 1.0;      // N(0, 1/s) prior on the means
  double alpha = 2.0;  // Dirichlet-process concentration
};

//! Stick-breaking state with components instantiated on demand.  Allocations
//! are 1-based; the invariant instantiated >= max(d) + k keeps every window
//! the allocation kernel can reach realized, so no truncation error enters.
struct MdpState {
  std::vector<double> v;       // beta(1, alpha) sticks
  std::vector<double> w;       // stick-breaking weights
  std::vector<double> mu;      // component means
  std::vector<double> lambda;  // component precisions
  std::vector<long> d;         // per-observation allocations, 1-based

  std::size_t instantiated() const { return w.size(); }
};

MdpState mdp_init(const std::vector<double>& data, const MdpHyper& hyper, int k,
                  Rng& rng);

//! One full sweep: conjugate (mu, lambda) and stick updates given d, then
//! each allocation through the window kernel.
void mdp_gibbs_iteration(MdpState& state, const std::vector<double>& data,
                         const MdpHyper& hyper, int k, Rng& rng);

//! Draw from the predictive: component j with probability w_j (sticks
//! extended until the residual mass is below 1e-10), then N(mu_j, 1/lambda_j).
double mdp_predictive_draw(MdpState& state, const MdpHyper& hyper, Rng& rng);

// ---- Exponential mixture with unknown component count -----------------------

struct FiniteMixtureHyper {
  double poisson_rate = 1.0;  // prior pi(M) = shifted Poisson(rate)
  double alpha = 1.0;         // symmetric Dirichlet parameter of w | M
};

struct FiniteMixtureState {
  long m = 1;                  // number of components
  std::vector<double> w;       // weights, length m, sum to 1
  std::vector<long> d;         // allocations in {1..m} (empty when no data)
};

FiniteMixtureState finite_mixture_init(std::size_t n_obs, Rng& rng);

//! One sweep: allocations, Dirichlet weight update, then the M move through
//! the window kernel over candidate weight chains built by split/combine.
void finite_mixture_iteration(FiniteMixtureState& state,
                              const std::vector<double>& data,
                              const FiniteMixtureHyper& hyper, int k, Rng& rng);

// ---- Gaussian process regression ---------------------------------------------

struct GpRunResult {
  std::vector<double> posterior_mean;  // of the latent function
  double rmse_to_truth = 0.0;
  double mean_evals_per_step = 0.0;
};

GpRunResult gp_regression_run(EllipticalVariant variant,
                              const targets::GpData& data, std::size_t n_iter,
                              std::size_t burn_in, Rng& rng);

// ---- Poisson state-space model ------------------------------------------------

struct StateSpaceRunResult {
  std::vector<double> theta_samples;   // all n_iter draws, in order
  std::vector<double> x_last;          // final latent vector
  double theta_posterior_mean = 0.0;   // over the post-burn-in draws
  double wall_time_s = 0.0;
};

//! Alternate a full-block latent slice update of x in R^n with the conjugate
//! gamma update of theta.
StateSpaceRunResult state_space_run(const targets::StateSpaceData& data,
                                    std::size_t n_iter, std::size_t burn_in,
                                    double lambda, Rng& rng);

// ---- Spike-and-slab regression -------------------------------------------------

struct SpikeSlabRunResult {
  std::size_t n_kept = 0;
  std::size_t p = 0;
  std::vector<double> beta_samples;  // row-major, n_kept x p
  std::vector<double> posterior_mean;
  double wall_time_s = 0.0;
};

//! Latent slice over R^p on the spike-and-slab posterior, beta as one block.
SpikeSlabRunResult spike_slab_run(const targets::SpikeSlabData& data,
                                  std::size_t n_iter, std::size_t burn_in,
                                  double lambda, Rng& rng);

}  // namespace lss::experiments

#endif
