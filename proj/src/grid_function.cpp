// SPDX-License-Identifier: Apache-2.0
/// @file grid_function.cpp

#include "fracldg/grid_function.hpp"

#include <algorithm>
#include <cmath>

namespace fracldg {

double GridFunction::eval_ref(int s, double r) const {
  const double* c = elem(s);
  std::vector<double> p(modes());
  legendre_row(k, r, p.data());
  double v = 0.0;
  for (int m = 0; m <= k; ++m) v += c[m] * p[m];
  return v;
}

double GridFunction::eval(double x) const {
  if (x < mesh.xl - 1e-12 || x > mesh.xr + 1e-12)
    throw std::domain_error("GridFunction::eval: x outside mesh");
  int s = static_cast<int>((x - mesh.xl) / mesh.h());
  s = std::clamp(s, 0, mesh.n - 1);
  const double r = 2.0 * (x - mesh.center(s)) / mesh.h();
  return eval_ref(s, std::clamp(r, -1.0, 1.0));
}

double trace(const GridFunction& v, int interface, Side side) {
  if (interface < 0 || interface > v.mesh.n)
    throw std::domain_error("trace: interface out of range");
  if (side == Side::minus) {
    if (interface == 0)
      throw std::domain_error("trace: no minus side at the left boundary");
    const double* c = v.elem(interface - 1);
    double s = 0.0;  // P_m(1) = 1
    for (int m = 0; m <= v.k; ++m) s += c[m];
    return s;
  }
  if (interface == v.mesh.n)
    throw std::domain_error("trace: no plus side at the right boundary");
  const double* c = v.elem(interface);
  double s = 0.0;  // P_m(-1) = (-1)^m
  for (int m = 0; m <= v.k; ++m) s += (m % 2 == 0 ? c[m] : -c[m]);
  return s;
}

double jump(const GridFunction& v, int interface) {
  return trace(v, interface, Side::plus) - trace(v, interface, Side::minus);
}

double average(const GridFunction& v, int interface) {
  return 0.5 *
         (trace(v, interface, Side::plus) + trace(v, interface, Side::minus));
}

GridFunction l2_project(const std::function<double(double)>& f,
                        const Mesh1D& mesh, int k, int q) {
  if (q <= 0) q = k + 2;
  const QuadRule rule = gauss_rule(q);
  GridFunction out(mesh, k);
  std::vector<double> p(k + 1);
  for (int s = 0; s < mesh.n; ++s) {
    double* c = out.elem(s);
    for (int i = 0; i < q; ++i) {
      const double r = rule.nodes[i];
      const double fx = f(mesh.to_phys(s, r));
      legendre_row(k, r, p.data());
      for (int m = 0; m <= k; ++m) c[m] += rule.weights[i] * fx * p[m];
    }
    // (f, P_m) / ||P_m||^2 on the reference element; the h/2 Jacobians cancel.
    for (int m = 0; m <= k; ++m) c[m] *= (2.0 * m + 1.0) / 2.0;
  }
  return out;
}

GridFunction gauss_radau_project(const std::function<double(double)>& f,
                                 const Mesh1D& mesh, int k, Side side,
                                 int q) {
  if (k < 1)
    throw std::invalid_argument(
        "gauss_radau_project: k = 0 leaves no moment conditions");
  if (q <= 0) q = k + 2;
  const QuadRule rule = gauss_rule(q);
  GridFunction out(mesh, k);
  std::vector<double> p(k + 1);
  for (int s = 0; s < mesh.n; ++s) {
    double* c = out.elem(s);
    for (int i = 0; i < q; ++i) {
      const double r = rule.nodes[i];
      const double fx = f(mesh.to_phys(s, r));
      legendre_row(k - 1, r, p.data());
      for (int m = 0; m < k; ++m) c[m] += rule.weights[i] * fx * p[m];
    }
    for (int m = 0; m < k; ++m) c[m] *= (2.0 * m + 1.0) / 2.0;
    // Endpoint interpolation fixes the top mode.
    if (side == Side::minus) {
      double fr = f(mesh.right(s));
      double sum = 0.0;
      for (int m = 0; m < k; ++m) sum += c[m];
      c[k] = fr - sum;  // P_m(1) = 1
    } else {
      double fl = f(mesh.left(s));
      double sum = 0.0;
      for (int m = 0; m < k; ++m) sum += (m % 2 == 0 ? c[m] : -c[m]);
      c[k] = (k % 2 == 0 ? 1.0 : -1.0) * (fl - sum);
    }
  }
  return out;
}

double l2_norm(const GridFunction& v, int q) {
  if (q <= 0) q = v.k + 1;
  const QuadRule rule = gauss_rule(q);
  const double jac = 0.5 * v.mesh.h();
  double acc = 0.0;
  for (int s = 0; s < v.mesh.n; ++s)
    for (int i = 0; i < q; ++i) {
      const double val = v.eval_ref(s, rule.nodes[i]);
      acc += jac * rule.weights[i] * val * val;
    }
  return std::sqrt(acc);
}

double l2_error(const GridFunction& v,
                const std::function<double(double)>& f, int q) {
  if (q <= 0) q = v.k + 3;
  const QuadRule rule = gauss_rule(q);
  const double jac = 0.5 * v.mesh.h();
  double acc = 0.0;
  for (int s = 0; s < v.mesh.n; ++s)
    for (int i = 0; i < q; ++i) {
      const double r = rule.nodes[i];
      const double d = v.eval_ref(s, r) - f(v.mesh.to_phys(s, r));
      acc += jac * rule.weights[i] * d * d;
    }
  return std::sqrt(acc);
}

}  // namespace fracldg
