// SPDX-License-Identifier: Apache-2.0
/// @file grid_function.hpp
/// @brief Piecewise-polynomial grid functions in the Legendre modal basis,
///        L2 and Gauss-Radau-type projections, traces, norms.

#pragma once

#include <functional>

#include "fracldg/basis.hpp"

namespace fracldg {

/// Modal coefficients, N x (k+1), element-major.
struct GridFunction {
  Mesh1D mesh;
  int k;
  std::vector<double> coef;

  GridFunction(const Mesh1D& m, int degree)
      : mesh(m), k(degree), coef(static_cast<std::size_t>(m.n) * (degree + 1),
                                 0.0) {
    if (k < 0) throw std::invalid_argument("GridFunction: k < 0");
  }

  int modes() const { return k + 1; }
  std::size_t size() const { return coef.size(); }
  double* elem(int s) { return coef.data() + static_cast<std::size_t>(s) * modes(); }
  const double* elem(int s) const {
    return coef.data() + static_cast<std::size_t>(s) * modes();
  }

  /// Value at reference coordinate r in element s.
  double eval_ref(int s, double r) const;
  /// Value at physical x (element located by binning; x must lie in the mesh).
  double eval(double x) const;
};

enum class Side { minus, plus };

/// One-sided trace at interface i (i = 0..N; 0 and N are the domain ends).
/// minus = limit from element i-1, plus = limit from element i.
/// Requesting a side that has no element is a domain error.
double trace(const GridFunction& v, int interface, Side side);

/// Jump [[V]] = V+ - V- at an interior interface.
double jump(const GridFunction& v, int interface);

/// Average {{V}} = (V+ + V-)/2 at an interior interface.
double average(const GridFunction& v, int interface);

/// Element-wise L2 projection; quadrature with q points (q = k+2 if q <= 0).
GridFunction l2_project(const std::function<double(double)>& f,
                        const Mesh1D& mesh, int k, int q = 0);

/// Gauss-Radau-type projection: orthogonal to degrees 0..k-1 on each
/// element plus endpoint interpolation.  side = minus interpolates at the
/// element's right endpoint, side = plus at the left.  Requires k >= 1.
GridFunction gauss_radau_project(const std::function<double(double)>& f,
                                 const Mesh1D& mesh, int k, Side side,
                                 int q = 0);

/// Global L2 norm by Gauss quadrature (q = k+1 if q <= 0; exact).
double l2_norm(const GridFunction& v, int q = 0);

/// Global L2 error against a reference function (q = k+3 if q <= 0).
double l2_error(const GridFunction& v,
                const std::function<double(double)>& f, int q = 0);

}  // namespace fracldg
