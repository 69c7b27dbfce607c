// SPDX-License-Identifier: Apache-2.0

#include "fracldg/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracldg/kernels.hpp"

namespace fracldg {
namespace {

double binom(int n, int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r *= static_cast<double>(n - j + i) / i;
  return r;
}

// G(m) = Gamma(m+1) / Gamma(m+1+mu), the shifted-monomial RL factor.
double rl_gain(int m, double mu) {
  return std::tgamma(m + 1.0) / std::tgamma(m + 1.0 + mu);
}

// Coefficients of shifted Legendre: P_q(2y - 1) = sum_j S[q][j] y^j.
std::vector<std::vector<double>> shifted_legendre_coeffs(int k) {
  std::vector<std::vector<double>> s(k + 1);
  for (int q = 0; q <= k; ++q) {
    s[q].resize(q + 1);
    for (int j = 0; j <= q; ++j) {
      double sign = ((q + j) % 2 == 0) ? 1.0 : -1.0;
      s[q][j] = sign * binom(q, j) * binom(q + j, j);
    }
  }
  return s;
}

// I_left^mu of one polynomial piece on [a, b] (coefficients about a),
// evaluated at x.  Valid for every x; zero for x <= a.
double rl_left_piece(const std::vector<double>& c, double a, double b,
                     double mu, double x) {
  if (x <= a) return 0.0;
  const int deg = static_cast<int>(c.size()) - 1;
  double acc = 0.0;
  if (x <= b) {
    for (int m = 0; m <= deg; ++m)
      acc += c[m] * rl_gain(m, mu) * std::pow(x - a, m + mu);
    return acc;
  }
  // Past the piece: subtract the same-form integral of the polynomial
  // re-expanded about b and anchored there.
  for (int m = 0; m <= deg; ++m) {
    double t = c[m] * rl_gain(m, mu) * std::pow(x - a, m + mu);
    for (int i = 0; i <= m; ++i)
      t -= c[m] * binom(m, i) * std::pow(b - a, m - i) * rl_gain(i, mu) *
           std::pow(x - b, i + mu);
    acc += t;
  }
  return acc;
}

double rl_left_all(const PiecewisePoly& u, double mu, double x) {
  double acc = 0.0;
  for (int i = 0; i < u.pieces(); ++i)
    acc += rl_left_piece(u.coef[i], u.breaks[i], u.breaks[i + 1], mu, x);
  return acc;
}

PiecewisePoly reflect(const PiecewisePoly& p) {
  const double m = p.breaks.front() + p.breaks.back();
  PiecewisePoly r;
  const int np = p.pieces();
  r.breaks.resize(np + 1);
  r.coef.resize(np);
  for (int i = 0; i <= np; ++i) r.breaks[i] = m - p.breaks[np - i];
  for (int i = 0; i < np; ++i) {
    // Piece np-1-i of p on [A,B] becomes r's piece i; with tau the local
    // coordinate from the reflected left edge, r(tau) = p((B-A) - tau).
    const auto& c = p.coef[np - 1 - i];
    const double w = p.breaks[np - i] - p.breaks[np - 1 - i];
    std::vector<double> d(c.size(), 0.0);
    for (int mdeg = 0; mdeg < static_cast<int>(c.size()); ++mdeg)
      for (int t = 0; t <= mdeg; ++t) {
        double sgn = (t % 2 == 0) ? 1.0 : -1.0;
        d[t] += c[mdeg] * binom(mdeg, t) * std::pow(w, mdeg - t) * sgn;
      }
    r.coef[i] = std::move(d);
  }
  return r;
}

}  // namespace

double PiecewisePoly::eval(double x) const {
  if (x < breaks.front() || x > breaks.back()) return 0.0;
  int i = static_cast<int>(std::upper_bound(breaks.begin(), breaks.end(), x) -
                           breaks.begin()) -
          1;
  i = std::clamp(i, 0, pieces() - 1);
  const double t = x - breaks[i];
  double acc = 0.0;
  for (int m = static_cast<int>(coef[i].size()) - 1; m >= 0; --m)
    acc = acc * t + coef[i][m];
  return acc;
}

PiecewisePoly PiecewisePoly::derivative() const {
  PiecewisePoly d;
  d.breaks = breaks;
  d.coef.resize(coef.size());
  for (std::size_t i = 0; i < coef.size(); ++i) {
    const int deg = static_cast<int>(coef[i].size()) - 1;
    d.coef[i].assign(std::max(deg, 1), 0.0);
    for (int m = 1; m <= deg; ++m) d.coef[i][m - 1] = m * coef[i][m];
  }
  return d;
}

PiecewisePoly PiecewisePoly::multiply(const PiecewisePoly& other) const {
  if (breaks.size() != other.breaks.size())
    throw std::invalid_argument("piecewise product: break mismatch");
  const double span = breaks.back() - breaks.front();
  for (std::size_t i = 0; i < breaks.size(); ++i)
    if (std::abs(breaks[i] - other.breaks[i]) > 1e-12 * span)
      throw std::invalid_argument("piecewise product: break mismatch");
  PiecewisePoly r;
  r.breaks = breaks;
  r.coef.resize(coef.size());
  for (std::size_t s = 0; s < coef.size(); ++s) {
    const auto& a = coef[s];
    const auto& b = other.coef[s];
    r.coef[s].assign(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        r.coef[s][i + j] += a[i] * b[j];
  }
  return r;
}

PiecewisePoly PiecewisePoly::from_monomials(const std::vector<double>& c,
                                            double a, double b) {
  if (!(b > a)) throw std::invalid_argument("from_monomials: empty interval");
  PiecewisePoly p;
  p.breaks = {a, b};
  p.coef = {shift_poly(c, a)};
  return p;
}

std::vector<double> shift_poly(const std::vector<double>& c, double a) {
  std::vector<double> d(c.size(), 0.0);
  for (int j = 0; j < static_cast<int>(c.size()); ++j)
    for (int m = 0; m <= j; ++m)
      d[m] += c[j] * binom(j, m) * std::pow(a, j - m);
  return d;
}

double rl_integral_shifted_monomial(int m, double mu, double a, double x,
                                    Direction dir) {
  if (m < 0 || !(mu > 0.0) || !(mu < 1.0))
    throw std::domain_error("rl_integral_shifted_monomial: need m >= 0, mu in (0,1)");
  const double d = (dir == Direction::left) ? x - a : a - x;
  if (d < 0.0)
    throw std::domain_error("rl_integral_shifted_monomial: x on wrong side of a");
  return rl_gain(m, mu) * std::pow(d, m + mu);
}

RieszProfile::RieszProfile(const PiecewisePoly& v, double beta) : beta_(beta) {
  if (!(beta > 1.0) || !(beta < 2.0))
    throw std::domain_error("RieszProfile: beta must lie in (1,2)");
  mu_ = 2.0 - beta;
  cbeta_ = 1.0 / (2.0 * std::cos(mu_ * std::numbers::pi / 2.0));
  w_ = v.derivative();
  x0_ = w_.breaks.front();
  xp_ = w_.breaks.back();

  // d/dx L_mu d/dx needs V' continuous and vanishing at the anchor ends.
  double scale = 1.0;
  for (int i = 0; i < w_.pieces(); ++i)
    for (double c : w_.coef[i]) scale = std::max(scale, std::abs(c));
  const double tol = 1e-9 * scale;
  if (std::abs(w_.eval(x0_)) > tol || std::abs(w_.coef[0][0]) > tol)
    throw std::domain_error("RieszProfile: V' must vanish at left anchor");
  {
    const auto& last = w_.coef.back();
    const double t = xp_ - w_.breaks[w_.pieces() - 1];
    double end = 0.0;
    for (int m = static_cast<int>(last.size()) - 1; m >= 0; --m)
      end = end * t + last[m];
    if (std::abs(end) > tol)
      throw std::domain_error("RieszProfile: V' must vanish at right anchor");
  }
  for (int i = 0; i + 1 < w_.pieces(); ++i) {
    const double b = w_.breaks[i + 1];
    const double t = b - w_.breaks[i];
    double left = 0.0;
    for (int m = static_cast<int>(w_.coef[i].size()) - 1; m >= 0; --m)
      left = left * t + w_.coef[i][m];
    if (std::abs(left - w_.coef[i + 1][0]) > tol)
      throw std::domain_error("RieszProfile: V' discontinuous at a break");
  }
  // With V' continuous and zero at the anchor ends,
  // d/dx I_left^mu[V'] = I_left^mu[V''], which has no singular powers.
  u_ = w_.derivative();
  ur_ = reflect(w_).derivative();
}

double RieszProfile::eval(double x) const {
  const double m = x0_ + xp_;
  return cbeta_ * (rl_left_all(u_, mu_, x) - rl_left_all(ur_, mu_, m - x));
}

void RieszOperator::apply(const double* r, double* out) const {
  kernels::matvec(mat.data(), r, out, dim(), dim());
}

RieszOperator assemble_riesz_matrix(const Mesh1D& mesh, int k, double beta) {
  if (!(beta > 1.0) || !(beta < 2.0))
    throw std::domain_error("assemble_riesz_matrix: beta must lie in (1,2)");
  if (k < 0) throw std::domain_error("assemble_riesz_matrix: k < 0");
  const double mu = 2.0 - beta;
  const double c = 1.0 / (2.0 * std::cos(mu * std::numbers::pi / 2.0));
  const int n = mesh.n, kp = k + 1;
  const double h = mesh.h();
  const double hpow = std::pow(h, mu + 1.0);
  const auto s = shifted_legendre_coeffs(k);

  // One block per element offset d = s - r; the d < 0 blocks are exact
  // transposes because the potential is self-adjoint and only one of the
  // two one-sided integrals reaches across any ordered pair.
  std::vector<std::vector<double>> block(n, std::vector<double>(kp * kp, 0.0));

  for (int p = 0; p <= k; ++p)
    for (int q = 0; q <= k; ++q) {
      double ll = 0.0;
      for (int j = 0; j <= q; ++j)
        for (int i = 0; i <= p; ++i)
          ll += s[q][j] * s[p][i] * rl_gain(j, mu) / (i + j + mu + 1.0);
      double par = ((p + q) % 2 == 0) ? 2.0 : 0.0;
      block[0][p * kp + q] = c * par * hpow * ll;
    }

  if (n >= 2) {
    for (int p = 0; p <= k; ++p)
      for (int q = 0; q <= k; ++q) {
        double acc = 0.0;
        for (int j = 0; j <= q; ++j)
          for (int m = 0; m <= p; ++m) {
            // int_0^h (x+h)^{j+mu} x^m dx, scaled by h^{-(j+mu+m+1)}.
            double t1 = 0.0;
            for (int i2 = 0; i2 <= m; ++i2) {
              double sgn = ((m - i2) % 2 == 0) ? 1.0 : -1.0;
              double e = j + mu + i2 + 1.0;
              t1 += sgn * binom(m, i2) * (std::pow(2.0, e) - 1.0) / e;
            }
            double t2 = 0.0;
            for (int i = 0; i <= j; ++i)
              t2 += binom(j, i) * rl_gain(i, mu) / (i + mu + m + 1.0);
            acc += s[q][j] * s[p][m] * (rl_gain(j, mu) * t1 - t2);
          }
        block[1][p * kp + q] = c * hpow * acc;
      }
  }

  if (n >= 3) {
    // Far pairs: the kernel is analytic on the pair, so tensor Gauss
    // converges spectrally; the closed form cancels catastrophically here.
    const QuadRule g = gauss_rule(16);
    std::vector<std::vector<double>> leg(g.size(),
                                         std::vector<double>(kp, 0.0));
    for (int a = 0; a < g.size(); ++a) legendre_row(k, g.nodes[a], leg[a].data());
    const double pref = c / std::tgamma(mu) * (h * h / 4.0) *
                        std::pow(h, mu - 1.0);
    for (int d = 2; d < n; ++d) {
      std::vector<double>& bd = block[d];
      for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b) {
          const double ker =
              std::pow(d + (g.nodes[a] - g.nodes[b]) / 2.0, mu - 1.0);
          const double wab = g.weights[a] * g.weights[b] * ker * pref;
          for (int p = 0; p <= k; ++p)
            for (int q = 0; q <= k; ++q)
              bd[p * kp + q] += wab * leg[a][p] * leg[b][q];
        }
    }
  }

  RieszOperator op;
  op.n = n;
  op.k = k;
  op.beta = beta;
  const int dim = n * kp;
  op.mat.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int se = 0; se < n; ++se)
    for (int re = 0; re < n; ++re) {
      const int d = se - re;
      for (int p = 0; p <= k; ++p)
        for (int q = 0; q <= k; ++q) {
          double v = (d >= 0) ? block[d][p * kp + q] : block[-d][q * kp + p];
          op.mat[static_cast<std::size_t>(se * kp + p) * dim + re * kp + q] = v;
        }
    }

  double amax = 0.0, asym = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j) {
      amax = std::max(amax, std::abs(op.mat[static_cast<std::size_t>(i) * dim + j]));
      asym = std::max(asym,
                      std::abs(op.mat[static_cast<std::size_t>(i) * dim + j] -
                               op.mat[static_cast<std::size_t>(j) * dim + i]));
    }
  if (asym > 1e-8 * std::max(amax, 1.0))
    throw std::runtime_error("assemble_riesz_matrix: asymmetric result");
  return op;
}

}  // namespace fracldg
