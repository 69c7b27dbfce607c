// SPDX-License-Identifier: Apache-2.0
/// @file ldg.hpp
/// @brief Local DG spatial discretization of
///   D_t V + F(V)_x = (S(V) V_x)_x + b * rieszD(V) + g,  V = data on the ends,
/// where rieszD(V) = d/dx [ L_mu dV/dx ] is the Riesz smoothing chain.
///
/// First-order system with phi' = sqrt(S):
///   R = sqrt(b) V_x,   E = L_mu R,   L = phi(V)_x,
///   D_t V = -( F(V) - sqrt(S(V)) L - sqrt(b) E )_x + g.
/// Fluxes alternate so every interface cross term telescopes exactly:
///   Vhat = V-,  phihat = phi(V-),  Lhat = L+,  Ehat = E+,
/// convection uses local Lax-Friedrichs.  At the domain ends Vhat and phihat
/// take the boundary datum, Lhat/Ehat fall back to the interior trace, and
/// the right end adds the penalty Ehat = E- + (sigma/h)(datum - V-).
///
/// Unknown layout: element s, Legendre mode p -> index s*(k+1)+p,
/// coefficients of unnormalized P_p on the reference element.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracldg/basis.hpp"
#include "fracldg/grid_function.hpp"
#include "fracldg/riesz.hpp"

namespace fracldg {

/// Convection law F(V); f and df must satisfy F(0) = 0.
struct ConvectionFlux {
  bool none = true;
  std::function<double(double)> f, df;

  /// Presets: "none", "linear" (v), "burgers" (v^2/2), "quartic" (v^4/2 + v).
  static ConvectionFlux preset(const std::string& name);
};

/// Diffusion coefficient S(V) >= 0 with phi(v) = int_0^v sqrt(S(u)) du.
struct Diffusion {
  bool constant = true;
  double value = 0.0;  ///< S when constant
  std::function<double(double)> s, sqrt_s, phi;

  /// Presets: "zero", "one", "square" (S = v^2).
  static Diffusion preset(const std::string& name);
  static Diffusion constant_value(double s0);
};

struct DirichletData {
  std::function<double(double)> left, right;  ///< datum as a function of t
  static DirichletData homogeneous();
};

/// Continuous problem data; spatial domain comes from the mesh.
struct LdgProblem {
  ConvectionFlux conv;
  Diffusion diff;
  DirichletData bc = DirichletData::homogeneous();
  double b = 0.0;      ///< nonlocal coefficient, >= 0
  double beta = 1.5;   ///< nonlocal order, in (1,2); unused when b == 0
  double sigma = 1.0;  ///< right-end penalty strength
};

/// Diagonal DG mass matrix, diag[(s,p)] = h/(2p+1).
struct DiagMass {
  int n = 0, k = 0;
  std::vector<double> diag, inv;
  int dim() const { return n * (k + 1); }
};
DiagMass assemble_mass(const Mesh1D& mesh, int k);

/// dtable[q*(k+1)+p] = int_{-1}^{1} P_q P_p' dr  (2 iff p > q, p+q odd).
std::vector<double> legendre_dtable(int k);

/// Weak derivative with downwind (minus-trace) flux; domain ends use the
/// datum, so rows touching them have affine parts:
///   (W, zeta_p)_s = -(V, zeta_p')_s + [Vhat zeta_p]  =  (K v + dl*aff_l + dr*aff_r)[s,p].
Eigen::MatrixXd weak_minus_matrix(const Mesh1D& mesh, int k);
Eigen::VectorXd weak_minus_left_pattern(const Mesh1D& mesh, int k);
Eigen::VectorXd weak_minus_right_pattern(const Mesh1D& mesh, int k);

/// Transport of an auxiliary field with upwind (plus-trace) flux and
/// interior-trace closure at the right end:
///   (T a)[s,p] = -(a, zeta_p')_s + [ahat zeta_p], ahat = a+ (a- at x_R).
Eigen::MatrixXd upwind_plus_matrix(const Mesh1D& mesh, int k);

/// Right-end penalty pieces: (P v)[N-1,p] = -sum_q v_{N-1,q} and the
/// matching datum pattern (+1 on the last element's rows).
Eigen::MatrixXd right_penalty_matrix(const Mesh1D& mesh, int k);
Eigen::VectorXd right_penalty_pattern(const Mesh1D& mesh, int k);

/// phi(v) = int_0^v sqrt(S(u)) du by adaptive quadrature (tol 1e-12).
/// Rejects S < 0 at any sample.  phi(0) = 0, phi non-decreasing.
double phi_transform(const std::function<double(double)>& s, double v);

/// Local Lax-Friedrichs flux for states (a, b) = (left, right) of a face:
/// (F(a)+F(b))/2 - (lam/2)(b - a), lam = max |dF| between the states.
double convection_flux(const ConvectionFlux& cf, double a, double b);

/// Weak convection terms at a frozen state: moments of
/// (F(Vm), zeta_p')_s - [Fhat zeta_p], Fhat = llf at the traces,
/// datum substituted for the missing trace at the ends.
Eigen::VectorXd convection_weak(const Mesh1D& mesh, int k,
                                const ConvectionFlux& cf,
                                const std::vector<double>& vm, double bl,
                                double br);

/// d convection_weak / d vm, the llf spread lambda held fixed at the state.
/// Block tridiagonal in element blocks; dense storage for the step solver.
Eigen::MatrixXd convection_jacobian_weak(const Mesh1D& mesh, int k,
                                         const ConvectionFlux& cf,
                                         const std::vector<double>& vm,
                                         double bl, double br);

/// Moments (f, zeta_p)_s of a scalar function, Gauss order k+3.
Eigen::VectorXd source_moments(const Mesh1D& mesh, int k,
                               const std::function<double(double)>& f);

/// Diffusion chain linearized about a frozen state Vm:
///   phi_lin(v) = phi(Vm) + sqrt(S(Vm)) (v - Vm)
/// gives L = M^{-1}(k_a v + d_a), and the outer divergence uses the frozen
/// coefficient sqrt(S(Vm(x))) in cells and the phi secant at the traces, so
/// the pair telescopes exactly.  For constant S this collapses to
/// sqrt(S) K_minus / sqrt(S) T_up independent of Vm.
struct FrozenDiffusion {
  Eigen::MatrixXd k_a;  ///< L-equation matrix acting on v
  Eigen::VectorXd d_a;  ///< L-equation affine (frozen + datum parts)
  Eigen::MatrixXd t_a;  ///< outer transport acting on L coefficients
};
FrozenDiffusion assemble_frozen_diffusion(const Mesh1D& mesh, int k,
                                          const Diffusion& diff,
                                          const std::vector<double>& vm,
                                          double bl, double br);

/// Everything fixed once (mesh, k, problem) are known.  The nonlocal
/// composite  s_frac = b T M^{-1} A M^{-1} K + sqrt(b)(sigma/h) P  is dense
/// and precomputed; time-dependent datum contributions are unit patterns
/// scaled each step.
class LdgDiscretization {
 public:
  LdgDiscretization(const Mesh1D& mesh, int k, const LdgProblem& prob);

  const Mesh1D& mesh() const { return mesh_; }
  int k() const { return k_; }
  int dim() const { return mass_.dim(); }
  const LdgProblem& problem() const { return prob_; }
  const DiagMass& mass() const { return mass_; }
  const RieszOperator& riesz() const { return riesz_; }
  bool linear() const { return prob_.conv.none && prob_.diff.constant; }

  /// theta M - s_diff - s_frac for the implicit step; constant-S path only.
  Eigen::MatrixXd implicit_matrix(double theta) const;
  /// Nonlocal composite block (zero-size when b == 0), for callers that
  /// rebuild the diffusion block themselves.
  const Eigen::MatrixXd& frac_matrix() const { return s_frac_; }
  /// Rebuild of the diffusion block for state-dependent S.
  Eigen::MatrixXd diffusion_matrix(const std::vector<double>& vm, double bl,
                                   double br, Eigen::VectorXd* affine) const;

  /// Affine right-hand contributions of the datum at time t
  /// (nonlocal chain, penalty, and constant-S diffusion datum).
  Eigen::VectorXd datum_affine(double t) const;
  /// Convection moments at a frozen state and time.
  Eigen::VectorXd convection(const std::vector<double>& vm, double t) const;
  /// Derivative of convection() in the state, llf spread frozen.
  Eigen::MatrixXd convection_jacobian(const std::vector<double>& vm,
                                      double t) const;

  /// Auxiliary fields for a given state (diagnostics and tests).
  struct Aux {
    std::vector<double> r, e, l;
  };
  Aux aux_fields(const std::vector<double>& v, double t) const;

  /// Full spatial weak vector SW(v, t), the moments of the right-hand side
  /// without the source:  (D_t V, zeta) = SW + (g, zeta).
  Eigen::VectorXd spatial_weak(const std::vector<double>& v, double t) const;

 private:
  Mesh1D mesh_;
  int k_;
  LdgProblem prob_;
  DiagMass mass_;
  RieszOperator riesz_;        // empty when b == 0
  Eigen::MatrixXd k_minus_, t_up_;
  Eigen::VectorXd aff_l_, aff_r_;
  Eigen::MatrixXd s_frac_;     // zero-size when b == 0
  Eigen::MatrixXd s_diff_;     // constant-S fast path, zero-size otherwise
  Eigen::VectorXd frac_aff_l_, frac_aff_r_, pen_aff_;
  Eigen::VectorXd diff_aff_l_, diff_aff_r_;  // constant-S datum patterns
};

/// M^{-1}(SW(v, t) + source moments): the full semidiscrete right side,
/// so that D_t V = spatial_rhs pointwise in the coefficient space.
std::vector<double> spatial_rhs(const LdgDiscretization& disc,
                                const std::vector<double>& v, double t,
                                const std::function<double(double)>& g_at_t);

}  // namespace fracldg
