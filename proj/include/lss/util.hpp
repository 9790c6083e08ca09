// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef LSS_UTIL_HPP
#define LSS_UTIL_HPP

#include <cmath>
#include <limits>
#include <span>

namespace lss {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(a > b ? a - b : b - a)));
}

inline double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs)
    if (x > m) m = x;
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

//! log of the standard normal density at z, without the -log(2*pi)/2 term.
inline double log_normal_kernel(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * std::log(var) - 0.5 * d * d / var;
}

}  // namespace lss

#endif
