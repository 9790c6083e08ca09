// Apache License, Version 2.0, refer to LICENSE.txt
//
// Latent slice sampler: a d-dimensional slice sampler in which the search
// rectangle is generated by the model itself.  The chain state (y, s) is
// augmented per step with a slice level w and a latent location l; the
// auxiliary pair (l, s) replaces the stepping-out / doubling constructions of
// interval-based slice samplers.  One step:
//
//   1. log w = log pi(y0) + log u;   l_j ~ U(y0_j - s0_j/2, y0_j + s0_j/2);
//      s_j ~ exp(-lambda s) 1(s > 2|l_j - y0_j|)
//   2. a_j = l_j - s_j/2, b_j = l_j + s_j/2        (y0 is interior)
//   3. propose y* uniform on the rectangle (a, b); accept if log pi(y*) > log w
//   4. otherwise shrink the rejecting side of each coordinate toward y0 and
//      repeat step 3.
//
// The refreshed s is carried into the next iteration as the current scale.

#ifndef LSS_LATENT_SLICE_HPP
#define LSS_LATENT_SLICE_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lss/distributions.hpp"
#include "lss/util.hpp"

namespace lss {

//! Evaluation contract for an unnormalized log target over R^dim.
//! eval must be pure, never NaN, and -inf outside the support; it must be
//! safe to call from several threads so independent chains can run in
//! parallel.
struct LogDensity {
  int dim = 0;
  std::function<double(std::span<const double>)> eval;

  double operator()(std::span<const double> y) const { return eval(y); }
};

struct LatentSliceConfig {
  double lambda = 0.1;          // rate of p(s) proportional to s*exp(-lambda*s)
  int max_shrink_iters = 10000; // stall guard; a stall means a broken target
  double s_init = 1.0;          // transient: refreshed at the first step
};

//! Chain position plus the carried per-coordinate scales.
struct LatentState {
  std::vector<double> y;
  std::vector<double> s;
  double log_pi_y = 0.0;  // always equals eval(y)
};

struct ChainOutput {
  std::size_t n_kept = 0;
  std::size_t dim = 0;
  std::vector<double> samples;       // row-major, n_kept x dim
  std::vector<std::size_t> kept_iteration;  // 1-based source iteration per row
  std::vector<int> shrink_counts;    // proposals used, one entry per iteration
  double wall_time_s = 0.0;

  double at(std::size_t row, std::size_t col) const {
    return samples[row * dim + col];
  }
  //! Copy of one coordinate's series.
  std::vector<double> column(std::size_t col) const {
    std::vector<double> out(n_kept);
    for (std::size_t r = 0; r < n_kept; ++r) out[r] = at(r, col);
    return out;
  }
};

inline double slice_level_from_u(double log_pi_y, double u) {
  return log_pi_y + std::log(u);
}

//! log w with w ~ U(0, pi(y0)), done in log space to avoid underflow.
template <class R>
double sample_slice_level(R& rng, double log_pi_y) {
  if (!std::isfinite(log_pi_y))
    throw std::runtime_error("sample_slice_level: chain is outside the support");
  return slice_level_from_u(log_pi_y, rng.next_double_open());
}

//! l_j ~ U(y_j - s_j/2, y_j + s_j/2).
template <class R>
double sample_latent_location(R& rng, double y_j, double s_j) {
  if (!(s_j > 0.0))
    throw std::runtime_error("sample_latent_location: scale must be positive");
  return y_j + s_j * (rng.next_double() - 0.5);
}

//! Scale conditional p(s | l, y) for p(s) ~ s exp(-lambda s):
//! exponential(lambda) shifted to (2|l - y|, inf).  The draw always covers y,
//! i.e. y lies in (l - s/2, l + s/2).
template <class R>
double sample_scale_conditional(R& rng, double l_j, double y_j, double lambda) {
  return shifted_exponential(rng, lambda, 2.0 * std::fabs(l_j - y_j));
}

template <class Vec>
struct ShrinkResult {
  Vec y;
  int iters = 0;
};

//! Shrinkage sampler on the rectangle (a, b): propose uniformly, tighten the
//! rejecting side of every coordinate toward y0 until in_slice holds.  The
//! rectangle only ever shrinks and always contains y0, because each update
//! compares the proposal against y0.  A proposal equal to y0_j tightens b_j.
template <class R, class Pred>
ShrinkResult<std::vector<double>> shrink_sample(R& rng, std::vector<double> a,
                                                std::vector<double> b,
                                                std::span<const double> y0,
                                                Pred&& in_slice,
                                                int max_iters = 10000) {
  const std::size_t d = y0.size();
  if (a.size() != d || b.size() != d)
    throw std::invalid_argument("shrink_sample: dimension mismatch");
  for (std::size_t j = 0; j < d; ++j)
    if (!(a[j] < y0[j] && y0[j] < b[j]))
      throw std::invalid_argument("shrink_sample: y0 not interior to (a, b)");

  std::vector<double> proposal(d);
  for (int iter = 1; iter <= max_iters; ++iter) {
    for (std::size_t j = 0; j < d; ++j)
      proposal[j] = a[j] + (b[j] - a[j]) * rng.next_double();
    if (in_slice(std::span<const double>(proposal))) {
      return {std::move(proposal), iter};
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (proposal[j] < y0[j]) {
        if (proposal[j] > a[j]) a[j] = proposal[j];
      } else {
        if (proposal[j] < b[j]) b[j] = proposal[j];
      }
    }
  }
  throw std::runtime_error(
      "shrink_sample: stalled after " + std::to_string(max_iters) +
      " proposals; target is likely broken (NaN or measure-zero slice)");
}

//! One full latent slice update of `state`; returns the number of shrink
//! proposals used.  Exactly one (w, l, s) refresh and one shrink loop.
template <class R>
int step(LatentState& state, const LogDensity& target,
         const LatentSliceConfig& cfg, R& rng) {
  const std::size_t d = state.y.size();
  const double log_w = sample_slice_level(rng, state.log_pi_y);

  std::vector<double> a(d), b(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double l_j = sample_latent_location(rng, state.y[j], state.s[j]);
    const double s_j = sample_scale_conditional(rng, l_j, state.y[j], cfg.lambda);
    state.s[j] = s_j;
    a[j] = l_j - 0.5 * s_j;
    b[j] = l_j + 0.5 * s_j;
    // s > 2|l - y| guarantees containment; a violation means a broken scale.
    if (!(a[j] < state.y[j] && state.y[j] < b[j]))
      throw std::runtime_error("step: containment violated");
  }

  double log_pi_accepted = kNegInf;
  auto in_slice = [&](std::span<const double> y) {
    log_pi_accepted = target(y);
    return log_pi_accepted > log_w;
  };
  auto result = shrink_sample(rng, std::move(a), std::move(b),
                              std::span<const double>(state.y), in_slice,
                              cfg.max_shrink_iters);
  state.y = std::move(result.y);
  state.log_pi_y = log_pi_accepted;
  return result.iters;
}

//! Drive `step` for n_iter iterations, retaining every thin-th state after
//! burn_in.  Deterministic given the rng seed.
template <class R>
ChainOutput run_chain(const LogDensity& target, std::span<const double> init,
                      const LatentSliceConfig& cfg, std::size_t n_iter,
                      std::size_t burn_in, std::size_t thin, R& rng) {
  if (static_cast<int>(init.size()) != target.dim)
    throw std::invalid_argument("run_chain: init dimension mismatch");
  if (!(n_iter > burn_in)) throw std::invalid_argument("run_chain: n_iter <= burn_in");
  if (thin < 1) throw std::invalid_argument("run_chain: thin < 1");

  LatentState state;
  state.y.assign(init.begin(), init.end());
  state.s.assign(init.size(), cfg.s_init);
  state.log_pi_y = target(state.y);
  if (!std::isfinite(state.log_pi_y))
    throw std::invalid_argument("run_chain: init is outside the support");

  ChainOutput out;
  out.dim = init.size();
  out.shrink_counts.reserve(n_iter);
  const std::size_t n_kept = (n_iter - burn_in) / thin;
  out.samples.reserve(n_kept * out.dim);
  out.kept_iteration.reserve(n_kept);

  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 1; i <= n_iter; ++i) {
    out.shrink_counts.push_back(step(state, target, cfg, rng));
    if (i > burn_in && (i - burn_in) % thin == 0) {
      out.samples.insert(out.samples.end(), state.y.begin(), state.y.end());
      out.kept_iteration.push_back(i);
      ++out.n_kept;
    }
  }
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace lss

#endif
