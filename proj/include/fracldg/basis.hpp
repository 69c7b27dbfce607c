// SPDX-License-Identifier: Apache-2.0
/// @file basis.hpp
/// @brief Legendre modal basis, Gauss-Legendre quadrature, uniform 1D mesh.

#pragma once

#include <stdexcept>
#include <vector>

namespace fracldg {

/// P_n(x) by the three-term recurrence.  Requires n >= 0, |x| <= 1.
double legendre(int n, double x);

/// d/dx P_n(x).  Interior points use (1-x^2) P' = n (P_{n-1} - x P_n);
/// at the endpoints the closed form n(n+1)/2 * (+-1)^{n-1} applies.
double legendre_deriv(int n, double x);

/// Fill p[0..n] with P_0(x)..P_n(x).
void legendre_row(int n, double x, double* p);

/// Fill dp[0..n] with P_0'(x)..P_n'(x).
void legendre_deriv_row(int n, double x, double* dp);

/// Checked entry point: P_n(x) for deriv = 0, P_n'(x) for deriv = 1.
/// Rejects n < 0, deriv outside {0,1}, and |x| > 1 + 1e-14.
double legendre_eval(int n, double x, int deriv);

/// Legendre basis of degree k on the reference element [-1,1].
struct ReferenceBasis {
  int k;
  explicit ReferenceBasis(int degree) : k(degree) {
    if (k < 0) throw std::invalid_argument("ReferenceBasis: k < 0");
  }
  double eval(int p, double r) const { return legendre(p, r); }
  double eval_deriv(int p, double r) const { return legendre_deriv(p, r); }
  /// L^2([-1,1]) norm squared of mode p.
  static double mode_norm2(int p) { return 2.0 / (2 * p + 1); }
};

/// Gauss-Legendre rule on [-1,1]; weights sum to 2, exact to degree 2q-1.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// q-point Gauss-Legendre rule via Newton iteration on P_q roots.
/// Requires q >= 1.
QuadRule gauss_rule(int q);

/// Uniform mesh of n elements on [xl, xr].
struct Mesh1D {
  double xl, xr;
  int n;
  Mesh1D(double left, double right, int elements)
      : xl(left), xr(right), n(elements) {
    if (!(right > left)) throw std::invalid_argument("Mesh1D: xr <= xl");
    if (n < 1) throw std::invalid_argument("Mesh1D: n < 1");
  }
  double h() const { return (xr - xl) / n; }
  double left(int s) const { return xl + s * h(); }
  double right(int s) const { return xl + (s + 1) * h(); }
  double center(int s) const { return xl + (s + 0.5) * h(); }
  /// Physical point of reference coordinate r in element s.
  double to_phys(int s, double r) const { return center(s) + 0.5 * h() * r; }
};

}  // namespace fracldg
