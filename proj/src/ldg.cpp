// SPDX-License-Identifier: Apache-2.0

#include "fracldg/ldg.hpp"

#include <cmath>
#include <stdexcept>

#include "fracldg/quad_util.hpp"

namespace fracldg {
namespace {

// Minus/plus traces of a coefficient vector at interface i in 0..n.
double trace_minus(const std::vector<double>& v, int k, int i) {
  double acc = 0.0;
  for (int q = 0; q <= k; ++q) acc += v[(i - 1) * (k + 1) + q];
  return acc;
}
double trace_plus(const std::vector<double>& v, int k, int i) {
  double acc = 0.0;
  for (int q = 0; q <= k; ++q)
    acc += ((q % 2 == 0) ? 1.0 : -1.0) * v[i * (k + 1) + q];
  return acc;
}

double eval_elem(const std::vector<double>& v, int k, int s, const double* leg) {
  double acc = 0.0;
  for (int q = 0; q <= k; ++q) acc += v[s * (k + 1) + q] * leg[q];
  return acc;
}

// phi secant between two states; falls back to sqrt(S) at the midpoint.
double phi_secant(const Diffusion& d, double u, double w) {
  const double scale = std::max({1.0, std::abs(u), std::abs(w)});
  if (std::abs(w - u) > 1e-12 * scale) return (d.phi(w) - d.phi(u)) / (w - u);
  return d.sqrt_s(0.5 * (u + w));
}

}  // namespace

ConvectionFlux ConvectionFlux::preset(const std::string& name) {
  ConvectionFlux c;
  if (name == "none") {
    c.none = true;
    c.f = [](double) { return 0.0; };
    c.df = [](double) { return 0.0; };
  } else if (name == "linear") {
    c.none = false;
    c.f = [](double v) { return v; };
    c.df = [](double) { return 1.0; };
  } else if (name == "burgers") {
    c.none = false;
    c.f = [](double v) { return 0.5 * v * v; };
    c.df = [](double v) { return v; };
  } else if (name == "quartic") {
    c.none = false;
    c.f = [](double v) { return 0.5 * v * v * v * v + v; };
    c.df = [](double v) { return 2.0 * v * v * v + 1.0; };
  } else {
    throw std::invalid_argument("unknown convection preset: " + name);
  }
  return c;
}

Diffusion Diffusion::preset(const std::string& name) {
  if (name == "zero") return constant_value(0.0);
  if (name == "one") return constant_value(1.0);
  if (name == "square") {
    Diffusion d;
    d.constant = false;
    d.s = [](double v) { return v * v; };
    d.sqrt_s = [](double v) { return std::abs(v); };
    d.phi = [](double v) { return 0.5 * v * std::abs(v); };
    return d;
  }
  throw std::invalid_argument("unknown diffusion preset: " + name);
}

Diffusion Diffusion::constant_value(double s0) {
  if (s0 < 0.0) throw std::domain_error("diffusion coefficient must be >= 0");
  Diffusion d;
  d.constant = true;
  d.value = s0;
  const double r = std::sqrt(s0);
  d.s = [s0](double) { return s0; };
  d.sqrt_s = [r](double) { return r; };
  d.phi = [r](double v) { return r * v; };
  return d;
}

DirichletData DirichletData::homogeneous() {
  DirichletData b;
  b.left = [](double) { return 0.0; };
  b.right = [](double) { return 0.0; };
  return b;
}

DiagMass assemble_mass(const Mesh1D& mesh, int k) {
  DiagMass m;
  m.n = mesh.n;
  m.k = k;
  m.diag.resize(m.dim());
  m.inv.resize(m.dim());
  const double h = mesh.h();
  for (int s = 0; s < mesh.n; ++s)
    for (int p = 0; p <= k; ++p) {
      m.diag[s * (k + 1) + p] = h / (2.0 * p + 1.0);
      m.inv[s * (k + 1) + p] = (2.0 * p + 1.0) / h;
    }
  return m;
}

std::vector<double> legendre_dtable(int k) {
  std::vector<double> g((k + 1) * (k + 1), 0.0);
  for (int q = 0; q <= k; ++q)
    for (int p = 0; p <= k; ++p)
      if (p > q && (p + q) % 2 == 1) g[q * (k + 1) + p] = 2.0;
  return g;
}

Eigen::MatrixXd weak_minus_matrix(const Mesh1D& mesh, int k) {
  const int kp = k + 1, n = mesh.n, dim = n * kp;
  const auto g = legendre_dtable(k);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < n; ++s)
    for (int p = 0; p <= k; ++p) {
      const int row = s * kp + p;
      for (int q = 0; q <= k; ++q) {
        m(row, s * kp + q) = -g[q * kp + p] + ((s <= n - 2) ? 1.0 : 0.0);
        if (s >= 1)
          m(row, (s - 1) * kp + q) = (p % 2 == 0) ? -1.0 : 1.0;
      }
    }
  return m;
}

Eigen::VectorXd weak_minus_left_pattern(const Mesh1D& mesh, int k) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(mesh.n * (k + 1));
  for (int p = 0; p <= k; ++p) v(p) = (p % 2 == 0) ? -1.0 : 1.0;
  return v;
}

Eigen::VectorXd weak_minus_right_pattern(const Mesh1D& mesh, int k) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(mesh.n * (k + 1));
  for (int p = 0; p <= k; ++p) v((mesh.n - 1) * (k + 1) + p) = 1.0;
  return v;
}

Eigen::MatrixXd upwind_plus_matrix(const Mesh1D& mesh, int k) {
  const int kp = k + 1, n = mesh.n, dim = n * kp;
  const auto g = legendre_dtable(k);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < n; ++s)
    for (int p = 0; p <= k; ++p) {
      const int row = s * kp + p;
      for (int q = 0; q <= k; ++q) {
        double diag = -g[q * kp + p] - (((p + q) % 2 == 0) ? 1.0 : -1.0);
        if (s == n - 1) diag += 1.0;
        m(row, s * kp + q) = diag;
        if (s <= n - 2)
          m(row, (s + 1) * kp + q) = ((q % 2 == 0) ? 1.0 : -1.0);
      }
    }
  return m;
}

Eigen::MatrixXd right_penalty_matrix(const Mesh1D& mesh, int k) {
  const int kp = k + 1, dim = mesh.n * kp;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int p = 0; p <= k; ++p)
    for (int q = 0; q <= k; ++q)
      m((mesh.n - 1) * kp + p, (mesh.n - 1) * kp + q) = -1.0;
  return m;
}

Eigen::VectorXd right_penalty_pattern(const Mesh1D& mesh, int k) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(mesh.n * (k + 1));
  for (int p = 0; p <= k; ++p) v((mesh.n - 1) * (k + 1) + p) = 1.0;
  return v;
}

double phi_transform(const std::function<double(double)>& s, double v) {
  if (v == 0.0) return 0.0;
  const auto integrand = [&s](double u) {
    const double su = s(u);
    if (su < 0.0) throw std::domain_error("phi_transform: S < 0");
    return std::sqrt(su);
  };
  const double sign = (v > 0.0) ? 1.0 : -1.0;
  return sign * adaptive_quad(integrand, std::min(0.0, v), std::max(0.0, v),
                              1e-12);
}

namespace {

// max |dF| between the states; 9 samples cover every preset exactly
// (their |dF| peaks at an endpoint) and guard non-monotone dF.
double llf_spread(const ConvectionFlux& cf, double a, double b) {
  const double lo = std::min(a, b), hi = std::max(a, b);
  double c = 0.0;
  for (int i = 0; i <= 8; ++i)
    c = std::max(c, std::abs(cf.df(lo + (hi - lo) * i / 8.0)));
  return c;
}

}  // namespace

double convection_flux(const ConvectionFlux& cf, double a, double b) {
  const double c = llf_spread(cf, a, b);
  return 0.5 * (cf.f(a) + cf.f(b)) - 0.5 * c * (b - a);
}

Eigen::VectorXd convection_weak(const Mesh1D& mesh, int k,
                                const ConvectionFlux& cf,
                                const std::vector<double>& vm, double bl,
                                double br) {
  const int kp = k + 1, n = mesh.n;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n * kp);
  if (cf.none) return out;

  const QuadRule rule = gauss_rule(2 * k + 3);
  std::vector<double> leg(kp), dleg(kp);

  // Single-valued interface fluxes, datum standing in for the missing trace.
  std::vector<double> fhat(n + 1);
  fhat[0] = convection_flux(cf, bl, trace_plus(vm, k, 0));
  for (int i = 1; i < n; ++i)
    fhat[i] = convection_flux(cf, trace_minus(vm, k, i), trace_plus(vm, k, i));
  fhat[n] = convection_flux(cf, trace_minus(vm, k, n), br);

  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < rule.size(); ++a) {
      legendre_row(k, rule.nodes[a], leg.data());
      legendre_deriv_row(k, rule.nodes[a], dleg.data());
      // (F(V), zeta_p')_s: the h/2 Jacobian cancels the 2/h of zeta'.
      const double fv = cf.f(eval_elem(vm, k, s, leg.data()));
      for (int p = 0; p <= k; ++p)
        out(s * kp + p) += rule.weights[a] * fv * dleg[p];
    }
    for (int p = 0; p <= k; ++p) {
      out(s * kp + p) -= fhat[s + 1];
      out(s * kp + p) += ((p % 2 == 0) ? 1.0 : -1.0) * fhat[s];
    }
  }
  return out;
}

Eigen::MatrixXd convection_jacobian_weak(const Mesh1D& mesh, int k,
                                         const ConvectionFlux& cf,
                                         const std::vector<double>& vm,
                                         double bl, double br) {
  const int kp = k + 1, n = mesh.n, dim = n * kp;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  if (cf.none) return out;

  const QuadRule rule = gauss_rule(2 * k + 3);
  std::vector<double> leg(kp), dleg(kp);

  // Face flux sensitivities, the llf spread held at its value so the step
  // solver that consumes this Jacobian keeps the exact fixed point of
  // convection_weak:  d fhat = da * (d left state) + db * (d right state).
  std::vector<double> da(n + 1), db(n + 1);
  {
    std::vector<double> fa(n + 1), fb(n + 1);
    fa[0] = bl;
    fb[n] = br;
    for (int i = 1; i <= n; ++i) fa[i] = trace_minus(vm, k, i);
    for (int i = 0; i < n; ++i) fb[i] = trace_plus(vm, k, i);
    for (int i = 0; i <= n; ++i) {
      const double c = llf_spread(cf, fa[i], fb[i]);
      da[i] = 0.5 * cf.df(fa[i]) + 0.5 * c;
      db[i] = 0.5 * cf.df(fb[i]) - 0.5 * c;
    }
  }

  // Trace weights: d(trace_minus at face i)/d v_{i-1,q} = 1,
  //                d(trace_plus  at face i)/d v_{i,q}   = (-1)^q.
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < rule.size(); ++a) {
      legendre_row(k, rule.nodes[a], leg.data());
      legendre_deriv_row(k, rule.nodes[a], dleg.data());
      const double dfv = cf.df(eval_elem(vm, k, s, leg.data()));
      for (int p = 0; p <= k; ++p)
        for (int q = 0; q <= k; ++q)
          out(s * kp + p, s * kp + q) += rule.weights[a] * dfv * leg[q] * dleg[p];
    }
    for (int p = 0; p <= k; ++p) {
      const double sp = (p % 2 == 0) ? 1.0 : -1.0;
      for (int q = 0; q <= k; ++q) {
        const double sq = (q % 2 == 0) ? 1.0 : -1.0;
        // -fhat[s+1]: left state lives in element s, right in s+1 (or datum).
        out(s * kp + p, s * kp + q) -= da[s + 1];
        if (s + 1 < n) out(s * kp + p, (s + 1) * kp + q) -= db[s + 1] * sq;
        // +(-1)^p fhat[s]: left state in element s-1 (or datum), right in s.
        out(s * kp + p, s * kp + q) += sp * db[s] * sq;
        if (s > 0) out(s * kp + p, (s - 1) * kp + q) += sp * da[s];
      }
    }
  }
  return out;
}

Eigen::VectorXd source_moments(const Mesh1D& mesh, int k,
                               const std::function<double(double)>& f) {
  const int kp = k + 1;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(mesh.n * kp);
  const QuadRule rule = gauss_rule(k + 3);
  const double half = mesh.h() / 2.0;
  std::vector<double> leg(kp);
  for (int s = 0; s < mesh.n; ++s)
    for (int a = 0; a < rule.size(); ++a) {
      legendre_row(k, rule.nodes[a], leg.data());
      const double fv = f(mesh.to_phys(s, rule.nodes[a]));
      for (int p = 0; p <= k; ++p)
        out(s * kp + p) += half * rule.weights[a] * fv * leg[p];
    }
  return out;
}

FrozenDiffusion assemble_frozen_diffusion(const Mesh1D& mesh, int k,
                                          const Diffusion& diff,
                                          const std::vector<double>& vm,
                                          double bl, double br) {
  const int kp = k + 1, n = mesh.n, dim = n * kp;
  FrozenDiffusion fd;

  if (diff.constant) {
    const double a = std::sqrt(diff.value);
    fd.k_a = a * weak_minus_matrix(mesh, k);
    fd.t_a = a * upwind_plus_matrix(mesh, k);
    fd.d_a = weak_minus_left_pattern(mesh, k) * diff.phi(bl) +
             weak_minus_right_pattern(mesh, k) * diff.phi(br);
    return fd;
  }

  fd.k_a = Eigen::MatrixXd::Zero(dim, dim);
  fd.t_a = Eigen::MatrixXd::Zero(dim, dim);
  fd.d_a = Eigen::VectorXd::Zero(dim);

  const QuadRule rule = gauss_rule(2 * k + 3);
  std::vector<double> leg(kp), dleg(kp);

  // Frozen trace data: a- = sqrt(S(Vm-)) drives the L equation's flux,
  // the phi secant drives the outer transport's flux.
  std::vector<double> vminus(n + 1, bl), vplus(n + 1, br);
  for (int i = 1; i <= n; ++i) vminus[i] = trace_minus(vm, k, i);
  for (int i = 0; i < n; ++i) vplus[i] = trace_plus(vm, k, i);
  std::vector<double> sec(n + 1);
  for (int i = 0; i <= n; ++i) sec[i] = phi_secant(diff, vminus[i], vplus[i]);

  for (int s = 0; s < n; ++s) {
    // Cell parts: -(a zeta_q, zeta_p') for both matrices and the frozen
    // remainder -(phi(Vm) - a Vm, zeta_p').
    for (int g = 0; g < rule.size(); ++g) {
      legendre_row(k, rule.nodes[g], leg.data());
      legendre_deriv_row(k, rule.nodes[g], dleg.data());
      const double v0 = eval_elem(vm, k, s, leg.data());
      const double a0 = diff.sqrt_s(v0);
      const double rem = diff.phi(v0) - a0 * v0;
      for (int p = 0; p <= k; ++p) {
        const double wdp = rule.weights[g] * dleg[p];
        for (int q = 0; q <= k; ++q) {
          fd.k_a(s * kp + p, s * kp + q) -= wdp * a0 * leg[q];
          fd.t_a(s * kp + p, s * kp + q) -= wdp * a0 * leg[q];
        }
        fd.d_a(s * kp + p) -= wdp * rem;
      }
    }
    for (int p = 0; p <= k; ++p) {
      const int row = s * kp + p;
      const double zl = (p % 2 == 0) ? 1.0 : -1.0;
      // L equation, downwind trace phi_lin(v-) (datum at the ends).
      if (s <= n - 2) {
        const double am = diff.sqrt_s(vminus[s + 1]);
        for (int q = 0; q <= k; ++q) fd.k_a(row, s * kp + q) += am;
        fd.d_a(row) += diff.phi(vminus[s + 1]) - am * vminus[s + 1];
      } else {
        fd.d_a(row) += diff.phi(br);
      }
      if (s >= 1) {
        const double am = diff.sqrt_s(vminus[s]);
        for (int q = 0; q <= k; ++q) fd.k_a(row, (s - 1) * kp + q) -= zl * am;
        fd.d_a(row) -= zl * (diff.phi(vminus[s]) - am * vminus[s]);
      } else {
        fd.d_a(row) -= zl * diff.phi(bl);
      }
      // Outer transport, upwind trace sec * L+ (interior L- at the right end).
      for (int q = 0; q <= k; ++q) {
        const double zq = (q % 2 == 0) ? 1.0 : -1.0;
        if (s <= n - 2)
          fd.t_a(row, (s + 1) * kp + q) += sec[s + 1] * zq;
        else
          fd.t_a(row, s * kp + q) += sec[n];
        fd.t_a(row, s * kp + q) -= zl * sec[s] * zq;
      }
    }
  }
  return fd;
}

LdgDiscretization::LdgDiscretization(const Mesh1D& mesh, int k,
                                     const LdgProblem& prob)
    : mesh_(mesh), k_(k), prob_(prob) {
  if (k < 0) throw std::domain_error("LdgDiscretization: k < 0");
  if (prob.b < 0.0) throw std::domain_error("LdgDiscretization: b < 0");
  mass_ = assemble_mass(mesh, k);
  k_minus_ = weak_minus_matrix(mesh, k);
  t_up_ = upwind_plus_matrix(mesh, k);
  aff_l_ = weak_minus_left_pattern(mesh, k);
  aff_r_ = weak_minus_right_pattern(mesh, k);

  const int dim = mass_.dim();
  const Eigen::VectorXd minv =
      Eigen::Map<const Eigen::VectorXd>(mass_.inv.data(), dim);

  if (prob.b > 0.0) {
    riesz_ = assemble_riesz_matrix(mesh, k, prob.beta);
    using RowMat =
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> amat(riesz_.mat.data(), dim, dim);
    const double sb = std::sqrt(prob.b);
    // E = M^{-1} A M^{-1} (sqrt(b) K v + sqrt(b) datum patterns).
    const Eigen::MatrixXd chain =
        minv.asDiagonal() * (amat * (minv.asDiagonal() * k_minus_).eval());
    s_frac_ = prob.b * (t_up_ * chain) +
              sb * (prob.sigma / mesh.h()) * right_penalty_matrix(mesh, k);
    const auto through = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
      Eigen::VectorXd w = minv.asDiagonal() * u;
      w = amat * w;
      return prob.b * (t_up_ * (minv.asDiagonal() * w).eval());
    };
    frac_aff_l_ = through(aff_l_);
    frac_aff_r_ = through(aff_r_);
    pen_aff_ = sb * (prob.sigma / mesh.h()) * right_penalty_pattern(mesh, k);
  }

  if (prob.diff.constant && prob.diff.value > 0.0) {
    const double sq = std::sqrt(prob.diff.value);
    s_diff_ = prob.diff.value * (t_up_ * (minv.asDiagonal() * k_minus_));
    diff_aff_l_ = sq * (t_up_ * (minv.asDiagonal() * aff_l_));
    diff_aff_r_ = sq * (t_up_ * (minv.asDiagonal() * aff_r_));
  }
}

Eigen::MatrixXd LdgDiscretization::implicit_matrix(double theta) const {
  if (!prob_.diff.constant)
    throw std::logic_error(
        "implicit_matrix: state-dependent S needs diffusion_matrix");
  const int dim = mass_.dim();
  Eigen::MatrixXd m =
      theta *
      Eigen::Map<const Eigen::VectorXd>(mass_.diag.data(), dim).asDiagonal().toDenseMatrix();
  if (s_diff_.size() > 0) m -= s_diff_;
  if (s_frac_.size() > 0) m -= s_frac_;
  return m;
}

Eigen::MatrixXd LdgDiscretization::diffusion_matrix(
    const std::vector<double>& vm, double bl, double br,
    Eigen::VectorXd* affine) const {
  const int dim = mass_.dim();
  const Eigen::VectorXd minv =
      Eigen::Map<const Eigen::VectorXd>(mass_.inv.data(), dim);
  FrozenDiffusion fd = assemble_frozen_diffusion(mesh_, k_, prob_.diff, vm, bl, br);
  if (affine) *affine = fd.t_a * (minv.asDiagonal() * fd.d_a);
  return fd.t_a * (minv.asDiagonal() * fd.k_a);
}

Eigen::VectorXd LdgDiscretization::datum_affine(double t) const {
  const int dim = mass_.dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  const double bl = prob_.bc.left(t), br = prob_.bc.right(t);
  if (prob_.b > 0.0) {
    out += frac_aff_l_ * bl + frac_aff_r_ * br + pen_aff_ * br;
  }
  if (prob_.diff.constant && prob_.diff.value > 0.0) {
    out += diff_aff_l_ * prob_.diff.phi(bl) + diff_aff_r_ * prob_.diff.phi(br);
  }
  return out;
}

Eigen::VectorXd LdgDiscretization::convection(const std::vector<double>& vm,
                                              double t) const {
  return convection_weak(mesh_, k_, prob_.conv, vm, prob_.bc.left(t),
                         prob_.bc.right(t));
}

Eigen::MatrixXd LdgDiscretization::convection_jacobian(
    const std::vector<double>& vm, double t) const {
  return convection_jacobian_weak(mesh_, k_, prob_.conv, vm, prob_.bc.left(t),
                                  prob_.bc.right(t));
}

LdgDiscretization::Aux LdgDiscretization::aux_fields(
    const std::vector<double>& v, double t) const {
  const int dim = mass_.dim();
  const double bl = prob_.bc.left(t), br = prob_.bc.right(t);
  const Eigen::VectorXd minv =
      Eigen::Map<const Eigen::VectorXd>(mass_.inv.data(), dim);
  const Eigen::Map<const Eigen::VectorXd> vv(v.data(), dim);

  Aux aux;
  aux.r.assign(dim, 0.0);
  aux.e.assign(dim, 0.0);
  aux.l.assign(dim, 0.0);

  if (prob_.b > 0.0) {
    const double sb = std::sqrt(prob_.b);
    Eigen::VectorXd r =
        sb * (minv.asDiagonal() * (k_minus_ * vv + aff_l_ * bl + aff_r_ * br));
    Eigen::VectorXd e(dim);
    riesz_.apply(r.data(), e.data());
    e = minv.asDiagonal() * e;
    Eigen::Map<Eigen::VectorXd>(aux.r.data(), dim) = r;
    Eigen::Map<Eigen::VectorXd>(aux.e.data(), dim) = e;
  }
  if (!(prob_.diff.constant && prob_.diff.value == 0.0)) {
    FrozenDiffusion fd =
        assemble_frozen_diffusion(mesh_, k_, prob_.diff, v, bl, br);
    Eigen::VectorXd l = minv.asDiagonal() * (fd.k_a * vv + fd.d_a);
    Eigen::Map<Eigen::VectorXd>(aux.l.data(), dim) = l;
  }
  return aux;
}

Eigen::VectorXd LdgDiscretization::spatial_weak(const std::vector<double>& v,
                                                double t) const {
  const int dim = mass_.dim();
  const double bl = prob_.bc.left(t), br = prob_.bc.right(t);
  const Eigen::Map<const Eigen::VectorXd> vv(v.data(), dim);
  Eigen::VectorXd sw = convection(v, t);

  if (!(prob_.diff.constant && prob_.diff.value == 0.0)) {
    const Eigen::VectorXd minv =
        Eigen::Map<const Eigen::VectorXd>(mass_.inv.data(), dim);
    FrozenDiffusion fd =
        assemble_frozen_diffusion(mesh_, k_, prob_.diff, v, bl, br);
    sw += fd.t_a * (minv.asDiagonal() * (fd.k_a * vv + fd.d_a));
  }
  if (prob_.b > 0.0) {
    const double sb = std::sqrt(prob_.b);
    Aux aux = aux_fields(v, t);
    const Eigen::Map<const Eigen::VectorXd> e(aux.e.data(), dim);
    sw += sb * (t_up_ * e);
    sw += sb * (prob_.sigma / mesh_.h()) *
          (right_penalty_matrix(mesh_, k_) * vv + right_penalty_pattern(mesh_, k_) * br);
  }
  return sw;
}

std::vector<double> spatial_rhs(const LdgDiscretization& disc,
                                const std::vector<double>& v, double t,
                                const std::function<double(double)>& g_at_t) {
  const int dim = disc.dim();
  Eigen::VectorXd sw = disc.spatial_weak(v, t);
  if (g_at_t) sw += source_moments(disc.mesh(), disc.k(), g_at_t);
  std::vector<double> out(dim);
  for (int i = 0; i < dim; ++i) out[i] = disc.mass().inv[i] * sw(i);
  return out;
}

}  // namespace fracldg
