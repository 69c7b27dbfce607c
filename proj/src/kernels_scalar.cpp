// SPDX-License-Identifier: Apache-2.0
/// @file kernels_scalar.cpp
/// @brief Portable reference implementations of the arithmetic kernels.

#include "fracldg/kernels.hpp"

namespace fracldg::kernels::scalar {

void axpy(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void weighted_accumulate(double* y, const double* c,
                         const double* const* xs, std::size_t m,
                         std::size_t n) {
  // One pass over y per block of four states to cut memory traffic.
  std::size_t l = 0;
  for (; l + 4 <= m; l += 4) {
    const double c0 = c[l], c1 = c[l + 1], c2 = c[l + 2], c3 = c[l + 3];
    const double *x0 = xs[l], *x1 = xs[l + 1], *x2 = xs[l + 2],
                 *x3 = xs[l + 3];
    for (std::size_t i = 0; i < n; ++i)
      y[i] += c0 * x0[i] + c1 * x1[i] + c2 * x2[i] + c3 * x3[i];
  }
  for (; l < m; ++l) axpy(y, c[l], xs[l], n);
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void matvec(const double* a, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

}  // namespace fracldg::kernels::scalar
