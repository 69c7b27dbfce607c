// SPDX-License-Identifier: Apache-2.0
/// @file basis.cpp

#include "fracldg/basis.hpp"

#include <cmath>

namespace fracldg {

double legendre(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre: n < 0");
  if (std::abs(x) > 1.0 + 1e-14)
    throw std::domain_error("legendre: |x| > 1");
  double pm1 = 1.0;
  if (n == 0) return pm1;
  double p = x;
  for (int m = 2; m <= n; ++m) {
    double pm2 = pm1;
    pm1 = p;
    p = ((2 * m - 1) * x * pm1 - (m - 1) * pm2) / m;
  }
  return p;
}

double legendre_deriv(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_deriv: n < 0");
  if (std::abs(x) > 1.0 + 1e-14)
    throw std::domain_error("legendre_deriv: |x| > 1");
  if (n == 0) return 0.0;
  const double omx2 = 1.0 - x * x;
  if (omx2 < 1e-12) {
    double sign = (x > 0.0) ? 1.0 : ((n - 1) % 2 == 0 ? 1.0 : -1.0);
    return sign * 0.5 * n * (n + 1);
  }
  return n * (legendre(n - 1, x) - x * legendre(n, x)) / omx2;
}

void legendre_row(int n, double x, double* p) {
  p[0] = 1.0;
  if (n == 0) return;
  p[1] = x;
  for (int m = 2; m <= n; ++m)
    p[m] = ((2 * m - 1) * x * p[m - 1] - (m - 1) * p[m - 2]) / m;
}

void legendre_deriv_row(int n, double x, double* dp) {
  // P'_m = P'_{m-2} + (2m-1) P_{m-1}
  std::vector<double> p(n + 1);
  legendre_row(n, x, p.data());
  dp[0] = 0.0;
  if (n == 0) return;
  dp[1] = 1.0;
  for (int m = 2; m <= n; ++m) dp[m] = dp[m - 2] + (2 * m - 1) * p[m - 1];
}

double legendre_eval(int n, double x, int deriv) {
  if (deriv != 0 && deriv != 1)
    throw std::invalid_argument("legendre_eval: deriv must be 0 or 1");
  return deriv == 0 ? legendre(n, x) : legendre_deriv(n, x);
}

QuadRule gauss_rule(int q) {
  if (q < 1) throw std::invalid_argument("gauss_rule: q < 1");
  QuadRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  const int mid = (q + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    // Chebyshev initial guess for the i-th root of P_q, then Newton.
    double z = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int m = 0; m < q; ++m) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * m + 1) * z * p1 - m * p2) / (m + 1);
      }
      pp = q * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[q - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

}  // namespace fracldg
