// Apache License, Version 2.0, refer to LICENSE.txt
//
// Catalog of the closed-form targets and synthetic data generators used by
// the experiment drivers and the test suites.

#ifndef LSS_TARGETS_HPP
#define LSS_TARGETS_HPP

#include <cstddef>
#include <vector>

#include "lss/latent_slice.hpp"
#include "lss/linalg.hpp"
#include "lss/rng.hpp"

namespace lss::targets {

//! Equal-weight mixture of N(-10, 1) and N(10, 1), d = 1.
LogDensity bimodal_mixture();

//! Zero-mean bivariate normal, unit variances, correlation rho.
LogDensity correlated_gaussian(double rho = 0.95);

//! Standard normal in d dimensions.
LogDensity isotropic_gaussian(int dim = 50);

//! Funnel: v ~ N(0, 3^2), x_i | v ~ N(0, e^v) for i = 1..9; coordinate 0 is v.
LogDensity funnel();

// ---- Gaussian process regression ------------------------------------------

struct GpData {
  std::vector<double> inputs;   // n evenly spaced points on [0, 1]
  std::vector<double> f_true;   // sin(4 pi x) + sin(7 pi x)
  std::vector<double> observed; // f_true + N(0, sigma^2) noise
  double noise_sd = 0.2;
};

GpData generate_gp_data(Rng& rng, std::size_t n = 100, double noise_sd = 0.2);

//! Squared-exponential covariance with lengthscale psi, signal sd tau and a
//! 1e-8 * tau^2 diagonal jitter (the smooth kernel is numerically
//! rank-deficient at n = 100 without it).
Matrix gp_covariance(const std::vector<double>& inputs, double psi = 0.1,
                     double tau = 1.0);

//! Gaussian log-likelihood sum_i -(y_i - f_i)^2 / (2 sigma^2).
LogDensity gp_log_likelihood(const GpData& data);

// ---- Poisson state-space model ---------------------------------------------

struct StateSpaceData {
  std::vector<double> x_true;  // latent AR(1): x_i = rho x_{i-1} + sigma z_i
  std::vector<long> counts;    // y_i ~ Poisson(theta exp(x_i))
  double rho = 0.8;
  double theta_true = 1.0;
};

StateSpaceData generate_state_space_data(Rng& rng, std::size_t n = 500,
                                         double rho = 0.8, double sigma = 1.0,
                                         double theta = 1.0);

//! pi(x | theta): sum_i [x_i y_i - theta e^{x_i} - (x_i - rho x_{i-1})^2 / 2]
//! with x_0 = 0; the heavy sum runs through the blocked parallel reduction.
LogDensity state_space_log_density(const StateSpaceData& data, double theta);

// ---- Spike-and-slab linear regression --------------------------------------

struct SpikeSlabData {
  std::size_t n = 100;
  std::size_t p = 90;
  std::vector<double> design;     // row-major n x p, iid N(0, 1) entries
  std::vector<double> response;   // X beta + N(0, 1) noise
  std::vector<double> beta_true;  // (1, 5, 5, 5, 5, 0, ..., 0)
};

SpikeSlabData generate_spike_slab_data(Rng& rng, std::size_t n = 100,
                                       std::size_t p = 90);

//! Posterior of beta: Gaussian likelihood (sigma = 1 known) times the
//! two-normal mixture prior with sd sigma1 (spike) and sigma2 (slab).
LogDensity spike_slab_log_density(const SpikeSlabData& data, double sigma1 = 0.1,
                                  double sigma2 = 10.0);

// ---- Mixture-model data ----------------------------------------------------

//! 400 draws from (1/3) N(-4,1) + (1/3) N(0,1) + (1/3) N(8,1).
std::vector<double> generate_mdp_data(Rng& rng, std::size_t n = 400);

//! 400 draws from the exponential density with rate 3.
std::vector<double> generate_exponential_data(Rng& rng, std::size_t n = 400,
                                              double rate = 3.0);

}  // namespace lss::targets

#endif
