// SPDX-License-Identifier: Apache-2.0
/// @file fractional.hpp
/// @brief Time-fractional machinery: L1 scheme weights for the Caputo
///        derivative, the midpoint distributed-order rule, and closed-form
///        Caputo derivatives used by the manufactured-solution harness.
///
/// L1 scheme on a uniform grid t_n = n*dt, 0 < alpha <= 1:
///   delta_t^alpha y_n = (1/lambda) [ y_n
///       - sum_{l=1}^{n-1} (a_{n-l-1} - a_{n-l}) y_l - a_{n-1} y_0 ],
///   a_l = (l+1)^{1-alpha} - l^{1-alpha},
///   lambda = dt^alpha * Gamma(2-alpha).
/// The scheme is exact on linear data and has truncation order 2-alpha.
/// At alpha = 1 it degenerates to the backward difference.
///
/// Distributed order: integral over alpha in (0,1) with weight W(alpha),
/// discretized by the midpoint rule with M_q panels of width p = 1/M_q:
/// nodes alpha_j = (2j-1)/(2 M_q), quadrature error O(p^2).

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace fracldg {

/// a_0..a_{n-1} for the given alpha; a_0 = 1, decreasing, positive.
/// Requires n >= 1.
std::vector<double> l1_coefficients(double alpha, int n);

/// lambda = dt^alpha * Gamma(2-alpha).
double lambda_factor(double alpha, double dt);

/// delta_t^alpha applied to samples y[0..n] at t_n = n*dt.  Requires n >= 1.
double caputo_l1_apply(const double* y, int n, double alpha, double dt);

/// Caputo derivative of t^m: Gamma(m+1)/Gamma(m+1-alpha) * t^{m-alpha} for
/// m >= 1, 0 for m = 0 (the derivative of a constant vanishes).
double caputo_monomial_exact(int m, double alpha, double t);

/// Caputo derivative of e^{-t} via the series
///   -e^{-t}/Gamma(1-alpha) * sum_n t^{n+1-alpha} / (n! (n+1-alpha)),
/// which matches adaptive quadrature of the defining integral to 1e-12.
double caputo_exp_decay(double alpha, double t);

/// Midpoint discretization of the distributed-order weight.
struct DistributedRule {
  std::vector<double> nodes;   ///< alpha_j = (2j-1)/(2 M_q)
  std::vector<double> pi_w;    ///< W(alpha_j) * (1/M_q)
  int mq() const { return static_cast<int>(nodes.size()); }
};

/// M_q midpoint panels on (0,1); W defaults to 1.  All W values must be
/// >= 0 and not identically zero.
DistributedRule distributed_rule(
    int mq, const std::function<double(double)>& weight = nullptr);

/// nn-point Gauss-Legendre rule mapped to (0,1).  The bound operator's
/// weights are analytic in alpha, so a modest nn integrates them to machine
/// precision; binding this rule yields the alpha-exact L1 operator against
/// which the midpoint rule's O(p^2) defect can be measured in isolation.
DistributedRule gauss_alpha_rule(
    int nn, const std::function<double(double)>& weight = nullptr);

/// Composite time-fractional operator bound to a step size: single-alpha
/// L1 or the distributed midpoint sum of per-node L1 operators.
///
///   D y_n = sum_j w_j [ y_n - sum_{l=1}^{n-1} (a^j_{n-l-1} - a^j_{n-l}) y_l
///                         - a^j_{n-1} y_0 ],   w_j = W(alpha_j) p / lambda_j.
struct TimeFractional {
  std::vector<double> alphas;
  std::vector<double> w;                 ///< effective weights w_j
  std::vector<std::vector<double>> a;    ///< a^{alpha_j}_l, l = 0..mt-1
  double dt = 0.0;
  int mt = 0;

  /// sum_j w_j; the scheme's mass coefficient (Q = 1/theta).
  double theta() const;

  /// Combined history weights for step n >= 1: fills c[0..n-1] such that
  /// the history term equals sum_{l=0}^{n-1} c_l y_l.
  void history_weights(int n, double* c) const;

  /// Reference (per-node) evaluation of the same weights; the collapsed
  /// fast path above must match this to 1e-14.
  void history_weights_reference(int n, double* c) const;

  static TimeFractional bind(const DistributedRule& rule, double dt, int mt);
  static TimeFractional single(double alpha, double dt, int mt);
};

}  // namespace fracldg
