// SPDX-License-Identifier: Apache-2.0
/// @file riesz.hpp
/// @brief Riesz fractional operator for 1 < beta < 2.
///
/// With mu = 2 - beta in (0,1) and the Riemann-Liouville integrals over the
/// anchor interval [x0, xP],
///   I_left^mu  f(x) = (1/Gamma(mu)) int_{x0}^{x} (x-e)^{mu-1} f(e) de,
///   I_right^mu f(x) = (1/Gamma(mu)) int_{x}^{xP} (e-x)^{mu-1} f(e) de,
/// the smoothing operator is the Riesz potential
///   L_mu f = (I_left^mu f + I_right^mu f) / (2 cos(mu pi/2)),
/// a positive operator whose mu -> 0 limit is the identity.  The nonlocal
/// diffusion term factors through it:
///   -(-L)^{beta/2} V = d/dx [ L_mu (dV/dx) ].
///
/// On shifted monomials the RL integrals have the closed form
///   I_left^mu [(.-a)^m 1_{(a,inf)}](x) = Gamma(m+1)/Gamma(m+1+mu) (x-a)^{m+mu}
/// from which everything here is assembled exactly.

#pragma once

#include <vector>

#include "fracldg/basis.hpp"

namespace fracldg {

/// Piecewise polynomial on [breaks.front(), breaks.back()]; coefficients of
/// piece i are about its left endpoint: p(x) = sum_m coef[i][m] (x-breaks[i])^m.
struct PiecewisePoly {
  std::vector<double> breaks;
  std::vector<std::vector<double>> coef;

  int pieces() const { return static_cast<int>(coef.size()); }
  double eval(double x) const;
  PiecewisePoly derivative() const;
  /// Product with another piecewise polynomial on identical breaks.
  PiecewisePoly multiply(const PiecewisePoly& other) const;

  /// Single piece from monomial coefficients about x = 0 on [a, b].
  static PiecewisePoly from_monomials(const std::vector<double>& c_about_zero,
                                      double a, double b);
};

/// Re-expand sum_j c[j] x^j about x = a: returns d with
/// p(x) = sum_m d[m] (x-a)^m.
std::vector<double> shift_poly(const std::vector<double>& c, double a);

enum class Direction { left, right };

/// Closed-form RL integral of a shifted monomial:
/// left:  I^mu[(.-a)^m 1_{(a,inf)}](x), requires x >= a;
/// right: I^mu[(a-.)^m 1_{(-inf,a)}](x), requires x <= a.
double rl_integral_shifted_monomial(int m, double mu, double a, double x,
                                    Direction dir);

/// Pointwise evaluator of -(-L)^{beta/2} V for a piecewise-polynomial V,
/// anchored at V's break interval.  Requires V' continuous across interior
/// breaks and vanishing at both ends (the d/dx L_mu d/dx form needs it);
/// V itself need not vanish.
class RieszProfile {
 public:
  RieszProfile(const PiecewisePoly& v, double beta);
  double eval(double x) const;
  double beta() const { return beta_; }

 private:
  PiecewisePoly w_;    // V'
  PiecewisePoly u_;    // V''
  PiecewisePoly ur_;   // reflected V', differentiated
  double beta_, mu_, cbeta_, x0_, xp_;
};

/// Dense Galerkin matrix of the Riesz potential on the DG space:
/// a[(s,p),(r,q)] = (L_mu zeta_{q,r}, zeta_{p,s}), size (N(k+1))^2.
/// Symmetric positive semidefinite.
struct RieszOperator {
  int n = 0, k = 0;
  double beta = 0.0;
  std::vector<double> mat;  ///< row-major, dimension n*(k+1)

  int dim() const { return n * (k + 1); }
  /// e = M^{-1} is applied by the caller; this is just e_out = A r.
  void apply(const double* r, double* out) const;
};

/// Assemble the matrix on a uniform mesh.  Uses translation invariance
/// (one block per element offset), exact shifted-monomial closed forms for
/// offsets 0 and 1, and tensor Gauss quadrature for the analytic far field.
/// Aborts (std::runtime_error) if the assembled matrix has asymmetry
/// beyond 1e-8.
RieszOperator assemble_riesz_matrix(const Mesh1D& mesh, int k, double beta);

}  // namespace fracldg
