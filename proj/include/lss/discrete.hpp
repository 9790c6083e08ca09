// Apache License, Version 2.0, refer to LICENSE.txt
//
// Rejection-free transition kernel for unnormalized pmfs on the nonnegative
// (or positive) integers.  Writing pi for the target, the kernel is
//
//   p(y | x) = pi(y)/k * sum_{l=max(y,x)}^{min(y,x)+k-1}
//              1 / sum_{z=max(floor, l-k+1)}^{l} pi(z),        |y - x| < k,
//
// sampled in its two-stage Gibbs form: l uniform on {x, ..., x+k-1}, then y
// proportional to pi on the window {max(floor, l-k+1), ..., l}.  The kernel
// satisfies detailed balance and always returns a value; there is no
// accept/reject component and no way to get stuck.

#ifndef LSS_DISCRETE_HPP
#define LSS_DISCRETE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lss/util.hpp"

namespace lss {

//! Unnormalized log pmf with its lowest admissible state.  support_floor is
//! 0 for targets on {0,1,...} and 1 for 1-based component indices.
struct DiscreteTarget {
  std::function<double(long)> log_pmf;
  long support_floor = 0;
};

//! One kernel transition from x; window width k.  Work is O(k): the target
//! is only evaluated on {x-k+1, ..., x+k-1} clamped to the support, which is
//! what lets infinite-dimensional problems collapse to finite ones.
template <class R>
long discrete_step(long x, const DiscreteTarget& target, int k, R& rng) {
  if (k < 1) throw std::invalid_argument("discrete_step: k < 1");
  if (x < target.support_floor)
    throw std::invalid_argument("discrete_step: x below support floor");
  if (k == 1) return x;

  const long l = x + static_cast<long>(rng.next_double() * k);
  const long z_lo = std::max(target.support_floor, l - k + 1);

  std::vector<double> logp(static_cast<std::size_t>(l - z_lo + 1));
  double best = kNegInf;
  for (long z = z_lo; z <= l; ++z) {
    const double lp = target.log_pmf(z);
    logp[static_cast<std::size_t>(z - z_lo)] = lp;
    if (lp > best) best = lp;
  }
  if (best == kNegInf)
    throw std::runtime_error("discrete_step: window has zero mass");

  double total = 0.0;
  for (double& lp : logp) {
    lp = std::exp(lp - best);
    total += lp;
  }
  const double u = rng.next_double() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < logp.size(); ++i) {
    cum += logp[i];
    if (u < cum) return z_lo + static_cast<long>(i);
  }
  return l;
}

//! Exact transition probability p(y | x); 0 outside the window.
inline double transition_probability(long x, long y,
                                     const DiscreteTarget& target, int k) {
  if (k < 1) throw std::invalid_argument("transition_probability: k < 1");
  if (y < target.support_floor || std::labs(y - x) >= k) return 0.0;
  const double log_pi_y = target.log_pmf(y);
  if (log_pi_y == kNegInf) return 0.0;

  const long l_lo = std::max(x, y);
  const long l_hi = std::min(x, y) + k - 1;
  double sum = 0.0;
  std::vector<double> window;
  for (long l = l_lo; l <= l_hi; ++l) {
    const long z_lo = std::max(target.support_floor, l - k + 1);
    window.clear();
    for (long z = z_lo; z <= l; ++z) window.push_back(target.log_pmf(z));
    const double log_denominator = log_sum_exp(window);
    if (log_denominator == kNegInf)
      throw std::runtime_error("transition_probability: window has zero mass");
    sum += std::exp(log_pi_y - log_denominator);
  }
  return sum / k;
}

//! Max detailed-balance residual |p(y|x)pi(x) - p(x|y)pi(y)| over all pairs
//! of a target truncated to {floor, ..., n_max} (pi normalized on that
//! range).  The pair scan is OpenMP-parallel; max-reduction order does not
//! affect the result.
inline double detailed_balance_residual(const DiscreteTarget& target,
                                        long n_max, int k) {
  const long lo = target.support_floor;
  if (n_max < lo) throw std::invalid_argument("detailed_balance_residual: empty range");
  const std::size_t n = static_cast<std::size_t>(n_max - lo + 1);

  std::vector<double> pi(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = std::exp(target.log_pmf(lo + static_cast<long>(i)));
    total += pi[i];
  }
  for (double& p : pi) p /= total;

  double residual = 0.0;
#pragma omp parallel for schedule(static) reduction(max : residual)
  for (long x = lo; x <= n_max; ++x) {
    for (long y = x; y <= n_max; ++y) {
      const double fwd = transition_probability(x, y, target, k) *
                         pi[static_cast<std::size_t>(x - lo)];
      const double bwd = transition_probability(y, x, target, k) *
                         pi[static_cast<std::size_t>(y - lo)];
      const double gap = std::fabs(fwd - bwd);
      if (gap > residual) residual = gap;
    }
  }
  return residual;
}

}  // namespace lss

#endif
