// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef LSS_LINALG_HPP
#define LSS_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lss {

//! Dense row-major square matrix; just enough for the GP covariance work.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

//! Lower Cholesky factor of a symmetric positive definite matrix.
inline Matrix cholesky_lower(const Matrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("cholesky_lower: not square");
  const std::size_t n = a.rows;
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = a.at(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l.at(i, k) * l.at(j, k);
      if (i == j) {
        if (!(acc > 0.0))
          throw std::runtime_error("cholesky_lower: matrix not positive definite");
        l.at(i, i) = std::sqrt(acc);
      } else {
        l.at(i, j) = acc / l.at(j, j);
      }
    }
  }
  return l;
}

//! y = L x for lower-triangular L.
inline std::vector<double> lower_matvec(const Matrix& l,
                                        std::span<const double> x) {
  if (l.cols != x.size()) throw std::invalid_argument("lower_matvec: size mismatch");
  std::vector<double> y(l.rows, 0.0);
  for (std::size_t i = 0; i < l.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += l.at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace lss

#endif
