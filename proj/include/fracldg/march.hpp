// SPDX-License-Identifier: Apache-2.0
/// @file march.hpp
/// @brief Implicit time marching of the LDG system with the L1 history sum.
///
/// Each step solves
///   (theta M - S_diff - S_frac) v_n = M sum_l c_l v_l + CV(v*, t_n)
///                                     + datum terms + (g(., t_n), zeta)
/// by Picard iteration: convection is evaluated at the previous iterate,
/// the diffusion chain at its secant linearization (exact for constant S),
/// and the nonlocal chain fully implicitly.  With no convection and constant
/// S the problem is linear and every step is a single factored solve.
///
/// The lagged convection contracts only while max|dF| (k+1)^2 / h stays
/// below theta; past that the step falls back to folding the convection
/// Jacobian into the matrix (a factorization per iterate, Newton-like
/// convergence), and stays there for the rest of the run.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracldg/fractional.hpp"
#include "fracldg/ldg.hpp"

namespace fracldg {

/// Picard stalled or produced non-finite coefficients; the run is aborted
/// rather than silently continued with a wrong state.
struct PicardFailure : std::runtime_error {
  int step;
  double residual;
  PicardFailure(int n, double res, const std::string& what)
      : std::runtime_error(what), step(n), residual(res) {}
};

/// Source term as a sum of separable products time(t) * space(x); the space
/// moments are integrated once and reused every step.
struct SeparableSource {
  struct Term {
    std::function<double(double)> time;
    std::function<double(double)> space;
  };
  std::vector<Term> terms;

  static SeparableSource none() { return {}; }
};

struct SolverConfig {
  double picard_tol = 1e-10;  ///< relative l2 change between iterates
  int picard_max = 50;
};

struct StepReport {
  int step = 0;
  double t = 0.0;
  int iterations = 0;
  double residual = 0.0;  ///< final relative iterate change
  double norm = 0.0;      ///< discrete L2 norm of the step solution
};

struct RunResult {
  std::vector<double> v;  ///< coefficients at the final time
  std::vector<StepReport> reports;
  int total_iterations = 0;
};

/// March v0 from t = 0 through tf.mt steps of size tf.dt.
/// Throws PicardFailure when a step exhausts the iteration cap or the
/// iterate leaves the finite range.
RunResult march(const LdgDiscretization& disc, const TimeFractional& tf,
                const std::vector<double>& v0, const SeparableSource& src,
                const SolverConfig& cfg = {});

/// Discrete L2 norm of a coefficient vector (modal Parseval).
double coef_l2_norm(const Mesh1D& mesh, int k, const std::vector<double>& v);

}  // namespace fracldg
