// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef LSS_DISTRIBUTIONS_HPP
#define LSS_DISTRIBUTIONS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lss {

// Inverse-CDF / transform kernels are split out from the draw functions so
// the deterministic mappings can be checked directly.

inline double uniform_from_u(double u, double lo, double hi) {
  return lo + (hi - lo) * u;
}

inline double shifted_exponential_from_u(double u, double rate, double shift) {
  return shift - std::log1p(-u) / rate;
}

template <class R>
double uniform(R& rng, double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("uniform: need finite lo < hi");
  return uniform_from_u(rng.next_double(), lo, hi);
}

//! Draw from the density proportional to exp(-rate*x) on (shift, inf).
template <class R>
double shifted_exponential(R& rng, double rate, double shift) {
  if (!(rate > 0.0)) throw std::invalid_argument("shifted_exponential: rate <= 0");
  if (!(shift >= 0.0)) throw std::invalid_argument("shifted_exponential: shift < 0");
  return shifted_exponential_from_u(rng.next_double(), rate, shift);
}

//! Normal draw via the Marsaglia polar method; the second variate of each
//! accepted pair is discarded.
template <class R>
double normal(R& rng, double mean, double sd) {
  if (!(sd > 0.0)) throw std::invalid_argument("normal: sd <= 0");
  double v1, v2, q;
  do {
    v1 = 2.0 * rng.next_double() - 1.0;
    v2 = 2.0 * rng.next_double() - 1.0;
    q = v1 * v1 + v2 * v2;
  } while (q >= 1.0 || q == 0.0);
  return mean + sd * v1 * std::sqrt(-2.0 * std::log(q) / q);
}

//! Gamma draw, Marsaglia-Tsang for shape >= 1, boosted for shape < 1.
template <class R>
double gamma(R& rng, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma: shape and scale must be > 0");
  if (shape < 1.0) {
    const double u = rng.next_double_open();
    return gamma(rng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal(rng, 0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_double_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v * scale;
  }
}

template <class R>
double beta(R& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("beta: parameters must be > 0");
  const double x = gamma(rng, a, 1.0);
  const double y = gamma(rng, b, 1.0);
  return x / (x + y);
}

template <class R>
std::vector<double> dirichlet(R& rng, std::span<const double> alphas) {
  if (alphas.empty()) throw std::invalid_argument("dirichlet: empty alphas");
  std::vector<double> out(alphas.size());
  double total = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0))
      throw std::invalid_argument("dirichlet: alphas must be > 0");
    out[i] = gamma(rng, alphas[i], 1.0);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

//! Index i with probability weights[i] / sum(weights); 0-based.
template <class R>
std::size_t categorical(R& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("categorical: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("categorical: weights sum to 0");
  const double target = rng.next_double() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    cum += weights[i];
    if (target < cum) return i;
  }
  return weights.size() - 1;
}

//! Poisson draw; sequential inversion below mean 10, Hormann's PTRS
//! transformed-rejection above.
template <class R>
long poisson(R& rng, double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("poisson: mean <= 0");
  if (mean < 10.0) {
    const double p0 = std::exp(-mean);
    double u = rng.next_double();
    long k = 0;
    double p = p0, cum = p0;
    while (u >= cum) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
      if (k > 1000000) throw std::runtime_error("poisson: inversion overran");
    }
    return k;
  }
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = rng.next_double() - 0.5;
    double v = rng.next_double_open();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_mean - mean - std::lgamma(kf + 1.0))
      return static_cast<long>(kf);
  }
}

}  // namespace lss

#endif
