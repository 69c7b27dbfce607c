// SPDX-License-Identifier: Apache-2.0

#include "fracldg/march.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "fracldg/kernels.hpp"

namespace fracldg {

double coef_l2_norm(const Mesh1D& mesh, int k, const std::vector<double>& v) {
  const double h = mesh.h();
  double acc = 0.0;
  for (int s = 0; s < mesh.n; ++s)
    for (int p = 0; p <= k; ++p) {
      const double c = v[s * (k + 1) + p];
      acc += c * c * h / (2.0 * p + 1.0);
    }
  return std::sqrt(acc);
}

RunResult march(const LdgDiscretization& disc, const TimeFractional& tf,
                const std::vector<double>& v0, const SeparableSource& src,
                const SolverConfig& cfg) {
  const int dim = disc.dim();
  if (static_cast<int>(v0.size()) != dim)
    throw std::invalid_argument("march: initial state has wrong size");
  const double theta = tf.theta();
  const double dt = tf.dt;
  const int mt = tf.mt;

  const Eigen::Map<const Eigen::VectorXd> mdiag(disc.mass().diag.data(), dim);

  // Space moments of each separable source term, integrated once.
  std::vector<Eigen::VectorXd> src_moments;
  src_moments.reserve(src.terms.size());
  for (const auto& term : src.terms)
    src_moments.push_back(source_moments(disc.mesh(), disc.k(), term.space));

  // Constant-S path: one factorization for the whole run.  Once the lagged
  // convection fails to contract, every later step folds the convection
  // Jacobian into the matrix instead; the stiffness that broke the cheap
  // path only grows with the solution, so the switch is one-way.
  const bool frozen_matrix = disc.problem().diff.constant;
  const bool has_conv = !disc.problem().conv.none;
  bool implicit_conv = false;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::MatrixXd imp_const;
  if (frozen_matrix) {
    imp_const = disc.implicit_matrix(theta);
    lu.compute(imp_const);
  }

  RunResult result;
  result.reports.reserve(mt);

  std::vector<std::vector<double>> history;
  history.reserve(mt + 1);
  history.push_back(v0);

  std::vector<double> cbuf(mt), combo(dim);
  std::vector<const double*> ptrs(mt);

  for (int n = 1; n <= mt; ++n) {
    const double t = n * dt;

    tf.history_weights(n, cbuf.data());
    for (int l = 0; l < n; ++l) ptrs[l] = history[l].data();
    std::fill(combo.begin(), combo.end(), 0.0);
    kernels::weighted_accumulate(combo.data(), cbuf.data(), ptrs.data(), n, dim);

    Eigen::VectorXd base =
        mdiag.asDiagonal() * Eigen::Map<const Eigen::VectorXd>(combo.data(), dim);
    base += disc.datum_affine(t);
    for (std::size_t i = 0; i < src.terms.size(); ++i)
      base += src.terms[i].time(t) * src_moments[i];

    std::vector<double> vm = history.back();
    StepReport rep;
    rep.step = n;
    rep.t = t;

    for (bool retry = true; retry;) {
      retry = false;
      try {
        for (int it = 1; it <= cfg.picard_max; ++it) {
          Eigen::VectorXd rhs = base;
          Eigen::MatrixXd jac;
          if (has_conv) {
            rhs += disc.convection(vm, t);
            if (implicit_conv) {
              jac = disc.convection_jacobian(vm, t);
              rhs.noalias() -=
                  jac * Eigen::Map<const Eigen::VectorXd>(vm.data(), dim);
            }
          }

          Eigen::VectorXd vnew;
          if (frozen_matrix && !implicit_conv) {
            vnew = lu.solve(rhs);
          } else {
            Eigen::MatrixXd mat;
            if (frozen_matrix) {
              mat = imp_const;
            } else {
              const double bl = disc.problem().bc.left(t);
              const double br = disc.problem().bc.right(t);
              Eigen::VectorXd daff;
              mat = theta * mdiag.asDiagonal().toDenseMatrix() -
                    disc.diffusion_matrix(vm, bl, br, &daff);
              if (disc.frac_matrix().size() > 0) mat -= disc.frac_matrix();
              rhs += daff;
            }
            if (implicit_conv) mat -= jac;
            vnew = Eigen::PartialPivLU<Eigen::MatrixXd>(mat).solve(rhs);
          }

          if (!vnew.allFinite())
            throw PicardFailure(n, std::numeric_limits<double>::quiet_NaN(),
                                "march: non-finite iterate at step " +
                                    std::to_string(n));

          const Eigen::Map<const Eigen::VectorXd> vold(vm.data(), dim);
          const double change = (vnew - vold).norm() /
                                std::max(vnew.norm(), 1e-300);
          Eigen::Map<Eigen::VectorXd>(vm.data(), dim) = vnew;
          rep.iterations = it;
          rep.residual = change;
          if (disc.linear() || change <= cfg.picard_tol) break;
          if (it == cfg.picard_max)
            throw PicardFailure(n, change,
                                "march: picard stalled at step " +
                                    std::to_string(n) + ", residual " +
                                    std::to_string(change));
        }
      } catch (const PicardFailure&) {
        if (!has_conv || implicit_conv) throw;
        implicit_conv = true;
        vm = history.back();
        retry = true;
      }
    }

    rep.norm = coef_l2_norm(disc.mesh(), disc.k(), vm);
    result.total_iterations += rep.iterations;
    result.reports.push_back(rep);
    history.push_back(std::move(vm));
  }

  result.v = history.back();
  return result;
}

}  // namespace fracldg
