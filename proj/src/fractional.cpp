// SPDX-License-Identifier: Apache-2.0
/// @file fractional.cpp

#include "fracldg/fractional.hpp"

#include <cmath>

#include "fracldg/basis.hpp"

namespace fracldg {

namespace {
void check_alpha(double alpha, bool allow_one) {
  if (!(alpha > 0.0) || alpha > 1.0 || (!allow_one && alpha == 1.0))
    throw std::domain_error("alpha outside (0,1]");
}
}  // namespace

std::vector<double> l1_coefficients(double alpha, int n) {
  check_alpha(alpha, true);
  if (n < 1) throw std::invalid_argument("l1_coefficients: n < 1");
  std::vector<double> a(n);
  const double e = 1.0 - alpha;
  double prev = 0.0;  // l^{1-alpha}
  for (int l = 0; l < n; ++l) {
    const double next = std::pow(static_cast<double>(l + 1), e);
    a[l] = next - prev;
    prev = next;
  }
  return a;
}

double lambda_factor(double alpha, double dt) {
  check_alpha(alpha, true);
  if (!(dt > 0.0)) throw std::domain_error("lambda_factor: dt <= 0");
  return std::pow(dt, alpha) * std::tgamma(2.0 - alpha);
}

double caputo_l1_apply(const double* y, int n, double alpha, double dt) {
  if (n < 1) throw std::invalid_argument("caputo_l1_apply: n < 1");
  const std::vector<double> a = l1_coefficients(alpha, n);
  double acc = y[n];
  for (int l = 1; l <= n - 1; ++l) acc -= (a[n - l - 1] - a[n - l]) * y[l];
  acc -= a[n - 1] * y[0];
  return acc / lambda_factor(alpha, dt);
}

double caputo_monomial_exact(int m, double alpha, double t) {
  if (m < 0) throw std::invalid_argument("caputo_monomial_exact: m < 0");
  check_alpha(alpha, true);
  if (t < 0.0) throw std::domain_error("caputo_monomial_exact: t < 0");
  if (m == 0) return 0.0;
  if (alpha == 1.0) return m * std::pow(t, m - 1);
  return std::tgamma(m + 1.0) / std::tgamma(m + 1.0 - alpha) *
         std::pow(t, m - alpha);
}

double caputo_exp_decay(double alpha, double t) {
  check_alpha(alpha, true);
  if (t < 0.0) throw std::domain_error("caputo_exp_decay: t < 0");
  if (alpha == 1.0) return -std::exp(-t);
  if (t == 0.0) return 0.0;
  // sum_n t^{n+1-alpha} / (n! (n+1-alpha)); kept in the form
  // 1/((1-alpha)Gamma(1-alpha)) = 1/Gamma(2-alpha) for the n = 0 term.
  double sum = 0.0;
  double tn_over_fact = 1.0;  // t^n / n!
  for (int n = 0; n < 200; ++n) {
    const double term = tn_over_fact / (n + 1.0 - alpha);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && n > 2) break;
    tn_over_fact *= t / (n + 1.0);
  }
  return -std::exp(-t) * std::pow(t, 1.0 - alpha) * sum /
         std::tgamma(1.0 - alpha);
}

DistributedRule distributed_rule(
    int mq, const std::function<double(double)>& weight) {
  if (mq < 1) throw std::invalid_argument("distributed_rule: mq < 1");
  DistributedRule r;
  r.nodes.resize(mq);
  r.pi_w.resize(mq);
  const double p = 1.0 / mq;
  bool any = false;
  for (int j = 0; j < mq; ++j) {
    r.nodes[j] = (2.0 * j + 1.0) / (2.0 * mq);
    const double wv = weight ? weight(r.nodes[j]) : 1.0;
    if (wv < 0.0)
      throw std::domain_error("distributed_rule: W(alpha) < 0");
    if (wv > 0.0) any = true;
    r.pi_w[j] = wv * p;
  }
  if (!any)
    throw std::domain_error("distributed_rule: W identically zero");
  return r;
}

DistributedRule gauss_alpha_rule(
    int nn, const std::function<double(double)>& weight) {
  if (nn < 1) throw std::invalid_argument("gauss_alpha_rule: nn < 1");
  const QuadRule q = gauss_rule(nn);
  DistributedRule r;
  r.nodes.resize(nn);
  r.pi_w.resize(nn);
  bool any = false;
  for (int j = 0; j < nn; ++j) {
    r.nodes[j] = 0.5 * (q.nodes[j] + 1.0);
    const double wv = weight ? weight(r.nodes[j]) : 1.0;
    if (wv < 0.0) throw std::domain_error("gauss_alpha_rule: W(alpha) < 0");
    if (wv > 0.0) any = true;
    r.pi_w[j] = wv * 0.5 * q.weights[j];
  }
  if (!any) throw std::domain_error("gauss_alpha_rule: W identically zero");
  return r;
}

double TimeFractional::theta() const {
  double s = 0.0;
  for (double wj : w) s += wj;
  return s;
}

void TimeFractional::history_weights(int n, double* c) const {
  if (n < 1 || n > mt)
    throw std::invalid_argument("history_weights: n out of range");
  const int nj = static_cast<int>(w.size());
  // c_0 = sum_j w_j a^j_{n-1};  c_l = sum_j w_j (a^j_{n-l-1} - a^j_{n-l}).
  for (int l = 0; l < n; ++l) c[l] = 0.0;
  for (int j = 0; j < nj; ++j) {
    const double wj = w[j];
    const double* aj = a[j].data();
    c[0] += wj * aj[n - 1];
    for (int l = 1; l < n; ++l) c[l] += wj * (aj[n - l - 1] - aj[n - l]);
  }
}

void TimeFractional::history_weights_reference(int n, double* c) const {
  // Same sum, accumulated per node without the difference collapse.
  if (n < 1 || n > mt)
    throw std::invalid_argument("history_weights: n out of range");
  for (int l = 0; l < n; ++l) c[l] = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    c[0] += w[j] * a[j][n - 1];
    for (int l = 1; l < n; ++l) {
      c[l] += w[j] * a[j][n - l - 1];
      c[l] -= w[j] * a[j][n - l];
    }
  }
}

TimeFractional TimeFractional::bind(const DistributedRule& rule, double dt,
                                    int mt) {
  if (mt < 1) throw std::invalid_argument("TimeFractional: mt < 1");
  TimeFractional tf;
  tf.dt = dt;
  tf.mt = mt;
  tf.alphas = rule.nodes;
  tf.w.resize(rule.mq());
  tf.a.resize(rule.mq());
  for (int j = 0; j < rule.mq(); ++j) {
    tf.w[j] = rule.pi_w[j] / lambda_factor(rule.nodes[j], dt);
    tf.a[j] = l1_coefficients(rule.nodes[j], mt);
  }
  return tf;
}

TimeFractional TimeFractional::single(double alpha, double dt, int mt) {
  check_alpha(alpha, true);
  if (mt < 1) throw std::invalid_argument("TimeFractional: mt < 1");
  TimeFractional tf;
  tf.dt = dt;
  tf.mt = mt;
  tf.alphas = {alpha};
  tf.w = {1.0 / lambda_factor(alpha, dt)};
  tf.a = {l1_coefficients(alpha, mt)};
  return tf;
}

}  // namespace fracldg
