// SPDX-License-Identifier: Apache-2.0
/// @file quad_util.hpp
/// @brief Adaptive quadrature for smooth 1D integrands.

#pragma once

#include <functional>

namespace fracldg {

/// Adaptive Simpson with Richardson acceptance; abs tolerance tol.
/// Intended for smooth integrands (presets, transformed singular kernels).
double adaptive_quad(const std::function<double(double)>& f, double a,
                     double b, double tol = 1e-12);

}  // namespace fracldg
