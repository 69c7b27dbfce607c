// SPDX-License-Identifier: Apache-2.0
/// @file mms.hpp
/// @brief Manufactured-solution harness: the three reference cases, source
///        derivation in closed form, convergence studies along the mesh,
///        step-size, and quadrature axes, and table emission.
///
/// Every case is separable, V(x, t) = tau(t) psi(x), with psi a compactly
/// anchored piecewise polynomial and tau either t^m or e^{-t}.  The source
/// is always re-derived from V so the manufactured identity
///   D_t V + F(V)_x = (S V_x)_x + b rieszD(V) + g
/// holds by construction; printed sources elsewhere are not trusted.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracldg/fractional.hpp"
#include "fracldg/ldg.hpp"
#include "fracldg/march.hpp"
#include "fracldg/riesz.hpp"

namespace fracldg {

/// Time-operator selection: a single Caputo order, or the uniform-weight
/// distributed order with M_q midpoint panels.
struct AlphaMode {
  bool distributed = true;
  double alpha = 0.5;  ///< single-order value when !distributed
  int mq = 50;         ///< midpoint panel count when distributed

  static AlphaMode single_order(double a) { return {false, a, 1}; }
  static AlphaMode distributed_uniform(int m) { return {true, 0.5, m}; }
};

/// The marching operator for a given mode, step size, and step count.
TimeFractional bind_time(const AlphaMode& am, double dt, int mt);

/// How the time-fractional part of a derived source is evaluated:
///   exact    - continuum operator: closed-form Caputo factors, integrated
///              adaptively over alpha in distributed mode
///   midpoint - distributed only: the M_q midpoint rule over alpha applied
///              to the closed-form factors, still continuum in t
///   discrete - the marching kernel itself applied to tau; the time
///              discretization then commits no error on the manufactured
///              factor, isolating a study's spatial error
///   discrete_time - the same stepping kernel but with the alpha integral
///              carried to machine precision (Gauss rule in alpha) instead
///              of the marching midpoint rule; the stepping error cancels
///              while the midpoint-in-alpha defect survives, isolating a
///              quadrature study's O(p^2) error.  Coincides with discrete
///              when the mode is a single order.
enum class SourceTime { exact, midpoint, discrete, discrete_time };

/// A separable exact solution plus the problem it solves.
struct ManufacturedCase {
  std::string name;
  double xl = 0.0, xr = 1.0;
  double t_end = 1.0;
  int time_power = 1;  ///< m >= 1 for tau = t^m; -1 for tau = e^{-t}
  PiecewisePoly profile;
  std::string conv_preset, diff_preset;
  std::function<double(double)> b_of_beta;

  double tau(double t) const;
  double tau_prime(double t) const;
  double exact(double x, double t) const { return tau(t) * profile.eval(x); }
};

/// The three reference cases (example1, example2, example3).
std::vector<ManufacturedCase> case_library();
const ManufacturedCase& find_case(const std::string& name);

/// Continuous problem for a case at the given beta; Dirichlet data is the
/// exact solution's trace at the domain ends.
LdgProblem make_problem(const ManufacturedCase& c, double beta);

/// Continuum time-fractional factor D tau(t) for the mode (closed form for
/// a single order, adaptive alpha quadrature when distributed).
double fractional_time_factor(const ManufacturedCase& c, const AlphaMode& am,
                              double t);

/// Derived source as separable terms; tf is required for the discrete mode
/// (it supplies the kernel) and ignored otherwise.
SeparableSource derive_source(const ManufacturedCase& c, double beta,
                              const AlphaMode& am,
                              SourceTime st = SourceTime::exact,
                              const TimeFractional* tf = nullptr);

/// g(x, t) of a separable source.
double source_value(const SeparableSource& g, double x, double t);

/// Largest |strong-form residual| of the manufactured identity on an
/// interior sample grid, every term evaluated independently of the closed
/// forms used by derive_source: the time factor by adaptive quadrature of
/// the Caputo integral (and of the alpha integral in distributed mode),
/// spatial derivatives by 6th-order finite differences, and the nonlocal
/// term by adaptive quadrature of the defining one-sided integrals plus a
/// difference in x.  Sample points keep clear of profile breaks so the
/// stencils stay inside one polynomial piece.  st = discrete is rejected
/// (that mode manufactures the discrete equation, not the PDE).
double max_residual(const ManufacturedCase& c, double beta,
                    const AlphaMode& am, const SeparableSource& g,
                    SourceTime st = SourceTime::exact, int nx = 10,
                    int nt = 10);

/// One full solve of a case on given discretization parameters.
struct RunSpec {
  double beta = 1.5;
  int k = 1;
  int n = 40;    ///< elements
  int mt = 500;  ///< time steps; dt = t_end / mt
  AlphaMode amode;
  SourceTime source_time = SourceTime::exact;
  double sigma = 1.0;
  SolverConfig solver;
};

struct CaseRun {
  std::vector<double> v;  ///< final-time coefficients
  double error = 0.0;     ///< L2 distance to the exact solution at t_end
  std::vector<StepReport> reports;
  int total_iterations = 0;
};

CaseRun run_case(const ManufacturedCase& c, const RunSpec& spec);

/// Refinement axis of a study; the resolution column holds N, M_t, or M_q.
enum class StudyAxis { h, dt, p };
std::string axis_name(StudyAxis axis);

struct StudyRow {
  long long resolution = 0;
  double error = 0.0;
  double order = 0.0;  ///< meaningful only when has_order
  bool has_order = false;
};

/// Errors and observed orders along one refinement axis.  order in row r
/// is (log E_{r-1} - log E_r) / log(res_r / res_{r-1}).
struct ConvergenceTable {
  std::string axis;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<StudyRow> rows;
};

/// Runs one level per entry of `levels` (values of N, M_t, or M_q along
/// `axis`; everything else from `base`).  A failing level aborts the study
/// with the level identified.
ConvergenceTable convergence_study(const ManufacturedCase& c, StudyAxis axis,
                                   const std::vector<int>& levels,
                                   const RunSpec& base);

/// format = "csv": `# key=value` meta lines, header `resolution,error,order`,
/// errors in 3-significant-digit scientific form, orders with 2 decimals,
/// first row's order empty.  format = "markdown": the same rows as a table.
std::string emit_table(const ConvergenceTable& t, const std::string& format);
ConvergenceTable parse_table(const std::string& csv);

/// Formatted equality: both sides emit the same CSV text.
bool operator==(const ConvergenceTable& a, const ConvergenceTable& b);

/// Two-column (log10 resolution, log10 error) text for plotting.
std::string emit_gnuplot(const ConvergenceTable& t);

}  // namespace fracldg
