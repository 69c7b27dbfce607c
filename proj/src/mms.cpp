// SPDX-License-Identifier: Apache-2.0

#include "fracldg/mms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "fracldg/grid_function.hpp"
#include "fracldg/quad_util.hpp"

namespace fracldg {
namespace {

double tau_of(int m, double t) {
  return m >= 1 ? std::pow(t, m) : std::exp(-t);
}

double tau_prime_of(int m, double t) {
  if (m >= 1) return m * std::pow(t, m - 1);
  return -std::exp(-t);
}

// Both closed forms are continuous on alpha in [0, 1]; clamping lets the
// alpha quadrature touch the endpoints.
double clamp_alpha(double a) { return std::min(1.0, std::max(1e-13, a)); }

double closed_caputo(int m, double alpha, double t) {
  if (m >= 1) return caputo_monomial_exact(m, alpha, t);
  return caputo_exp_decay(alpha, t);
}

double time_factor_impl(int m, const AlphaMode& am, double t) {
  if (!am.distributed) return closed_caputo(m, am.alpha, t);
  if (t <= 0.0) return 0.0;
  return adaptive_quad(
      [m, t](double a) { return closed_caputo(m, clamp_alpha(a), t); }, 0.0,
      1.0, 1e-12);
}

double midpoint_caputo(int m, int mq, double t) {
  double s = 0.0;
  for (int j = 0; j < mq; ++j)
    s += closed_caputo(m, (2.0 * j + 1.0) / (2.0 * mq), t);
  return s / mq;
}

}  // namespace

double ManufacturedCase::tau(double t) const { return tau_of(time_power, t); }
double ManufacturedCase::tau_prime(double t) const {
  return tau_prime_of(time_power, t);
}

TimeFractional bind_time(const AlphaMode& am, double dt, int mt) {
  if (am.distributed)
    return TimeFractional::bind(distributed_rule(am.mq), dt, mt);
  return TimeFractional::single(am.alpha, dt, mt);
}

std::vector<ManufacturedCase> case_library() {
  std::vector<ManufacturedCase> lib(3);

  ManufacturedCase& e1 = lib[0];
  e1.name = "example1";
  e1.xl = -1.0;
  e1.xr = 1.0;
  e1.t_end = 1.0;
  e1.time_power = 2;
  // (x^2 - 1)^4
  e1.profile =
      PiecewisePoly::from_monomials({1, 0, -4, 0, 6, 0, -4, 0, 1}, -1.0, 1.0);
  e1.conv_preset = "burgers";
  e1.diff_preset = "one";
  e1.b_of_beta = [](double beta) {
    return std::tgamma(8.0 - beta) / std::tgamma(8.0);
  };

  ManufacturedCase& e2 = lib[1];
  e2.name = "example2";
  e2.xl = 0.0;
  e2.xr = 1.0;
  e2.t_end = 1.0;
  e2.time_power = 3;
  // (1 - x^2)^2; nonzero at the left end, so the left datum is t^3.
  e2.profile = PiecewisePoly::from_monomials({1, 0, -2, 0, 1}, 0.0, 1.0);
  e2.conv_preset = "quartic";
  e2.diff_preset = "zero";
  e2.b_of_beta = [](double beta) {
    return std::tgamma(8.0 - beta) / std::tgamma(8.0);
  };

  ManufacturedCase& e3 = lib[2];
  e3.name = "example3";
  e3.xl = -2.0;
  e3.xr = 2.0;
  e3.t_end = 0.5;
  e3.time_power = -1;
  // (1 - x^2)^4 / 10 inside [-1, 1], zero on the outer pieces.
  {
    PiecewisePoly mid = PiecewisePoly::from_monomials(
        {0.1, 0, -0.4, 0, 0.6, 0, -0.4, 0, 0.1}, -1.0, 1.0);
    PiecewisePoly p;
    p.breaks = {-2.0, -1.0, 1.0, 2.0};
    p.coef = {{0.0}, mid.coef[0], {0.0}};
    e3.profile = p;
  }
  e3.conv_preset = "burgers";
  e3.diff_preset = "zero";
  e3.b_of_beta = [](double) { return 1.0; };

  return lib;
}

const ManufacturedCase& find_case(const std::string& name) {
  static const std::vector<ManufacturedCase> lib = case_library();
  for (const auto& c : lib)
    if (c.name == name) return c;
  throw std::invalid_argument("unknown case: " + name);
}

LdgProblem make_problem(const ManufacturedCase& c, double beta) {
  LdgProblem p;
  p.conv = ConvectionFlux::preset(c.conv_preset);
  p.diff = Diffusion::preset(c.diff_preset);
  p.b = c.b_of_beta(beta);
  p.beta = beta;
  const double pl = c.profile.eval(c.xl), pr = c.profile.eval(c.xr);
  const int m = c.time_power;
  p.bc.left = [pl, m](double t) { return pl * tau_of(m, t); };
  p.bc.right = [pr, m](double t) { return pr * tau_of(m, t); };
  return p;
}

double fractional_time_factor(const ManufacturedCase& c, const AlphaMode& am,
                              double t) {
  return time_factor_impl(c.time_power, am, t);
}

SeparableSource derive_source(const ManufacturedCase& c, double beta,
                              const AlphaMode& am, SourceTime st,
                              const TimeFractional* tf) {
  if (st == SourceTime::midpoint && !am.distributed) st = SourceTime::exact;
  if (st == SourceTime::discrete_time && !am.distributed)
    st = SourceTime::discrete;
  if ((st == SourceTime::discrete || st == SourceTime::discrete_time) &&
      tf == nullptr)
    throw std::invalid_argument("derive_source: discrete mode needs a kernel");

  SeparableSource g;
  const int m = c.time_power;
  const PiecewisePoly psi = c.profile;
  const PiecewisePoly dpsi = psi.derivative();

  // Time-fractional term  (D tau) psi.
  SeparableSource::Term dterm;
  dterm.space = [psi](double x) { return psi.eval(x); };
  switch (st) {
    case SourceTime::exact:
      dterm.time = [m, am](double t) { return time_factor_impl(m, am, t); };
      break;
    case SourceTime::midpoint:
      dterm.time = [m, mq = am.mq](double t) {
        return midpoint_caputo(m, mq, t);
      };
      break;
    case SourceTime::discrete:
    case SourceTime::discrete_time: {
      // discrete_time replaces the marching kernel's alpha rule by a Gauss
      // rule dense enough to be exact in double precision; same dt and mt.
      auto tfp = st == SourceTime::discrete
                     ? std::make_shared<TimeFractional>(*tf)
                     : std::make_shared<TimeFractional>(TimeFractional::bind(
                           gauss_alpha_rule(64), tf->dt, tf->mt));
      dterm.time = [m, tfp](double t) {
        const double dt = tfp->dt;
        const long long n = std::llround(t / dt);
        if (n < 1 || n > tfp->mt ||
            std::abs(t - n * dt) > 1e-8 * std::max(1.0, t))
          throw std::domain_error(
              "derive_source: discrete source sampled off the step grid");
        std::vector<double> cw(n);
        tfp->history_weights(static_cast<int>(n), cw.data());
        double v = tfp->theta() * tau_of(m, t);
        for (long long l = 0; l < n; ++l) v -= cw[l] * tau_of(m, l * dt);
        return v;
      };
      break;
    }
  }
  g.terms.push_back(std::move(dterm));

  // Convection  F(tau psi)_x, expanded per preset.
  if (c.conv_preset == "burgers") {
    PiecewisePoly q = psi.multiply(psi).derivative();
    g.terms.push_back({[m](double t) {
                         const double a = tau_of(m, t);
                         return a * a;
                       },
                       [q](double x) { return 0.5 * q.eval(x); }});
  } else if (c.conv_preset == "quartic") {
    PiecewisePoly q4 = psi.multiply(psi).multiply(psi).multiply(psi).derivative();
    g.terms.push_back({[m](double t) {
                         const double a = tau_of(m, t);
                         return a * a * a * a;
                       },
                       [q4](double x) { return 0.5 * q4.eval(x); }});
    g.terms.push_back({[m](double t) { return tau_of(m, t); },
                       [dpsi](double x) { return dpsi.eval(x); }});
  } else if (c.conv_preset == "linear") {
    g.terms.push_back({[m](double t) { return tau_of(m, t); },
                       [dpsi](double x) { return dpsi.eval(x); }});
  } else if (c.conv_preset != "none") {
    throw std::logic_error("derive_source: convection preset " +
                           c.conv_preset + " has no closed-form source");
  }

  // Diffusion  -(S V_x)_x with constant S.
  const Diffusion diff = Diffusion::preset(c.diff_preset);
  if (!diff.constant)
    throw std::logic_error(
        "derive_source: state-dependent S has no closed-form source");
  if (diff.value > 0.0) {
    PiecewisePoly lap = dpsi.derivative();
    g.terms.push_back(
        {[m, s0 = diff.value](double t) { return -s0 * tau_of(m, t); },
         [lap](double x) { return lap.eval(x); }});
  }

  // Nonlocal term  -b rieszD(V).
  const double b = c.b_of_beta(beta);
  if (b > 0.0) {
    auto rp = std::make_shared<RieszProfile>(psi, beta);
    g.terms.push_back({[m, b](double t) { return -b * tau_of(m, t); },
                       [rp](double x) { return rp->eval(x); }});
  }
  return g;
}

double source_value(const SeparableSource& g, double x, double t) {
  double acc = 0.0;
  for (const auto& term : g.terms) acc += term.time(t) * term.space(x);
  return acc;
}

double max_residual(const ManufacturedCase& c, double beta,
                    const AlphaMode& am, const SeparableSource& g,
                    SourceTime st, int nx, int nt) {
  if (st == SourceTime::discrete || st == SourceTime::discrete_time)
    throw std::invalid_argument(
        "max_residual: discrete sources manufacture the stepped equation, "
        "not the PDE");

  const LdgProblem prob = make_problem(c, beta);
  const int m = c.time_power;
  // Stencil truncation is O(fdh^6 f^(7)); the quartic flux composition and
  // the mu near 0 kernels have seventh derivatives ~1e7, so fdh must hold
  // the product a couple of orders under the 1e-9 gate.
  const double fdh = 2e-3, margin = 0.05;

  // Samples clear of every break so difference stencils stay in one piece.
  std::vector<double> xs;
  const double span = c.xr - c.xl;
  for (int i = 1; i <= 3 * nx && static_cast<int>(xs.size()) < nx; ++i) {
    const double x = c.xl + span * i / (3.0 * nx + 1.0);
    bool ok = true;
    for (double bk : c.profile.breaks) ok = ok && std::abs(x - bk) >= margin;
    if (ok) xs.push_back(x);
  }

  // Time factor of the fractional term by quadrature of the defining
  // integral: substitution u = (t-eta)^{1-alpha} gives
  //   D^alpha tau(t) = (1/Gamma(2-alpha)) int_0^{t^{1-alpha}}
  //                        tau'(t - u^{1/(1-alpha)}) du.
  const auto caputo_gate = [&](double alpha, double t) -> double {
    if (alpha >= 1.0 - 1e-9) return tau_prime_of(m, t);
    const double e = 1.0 - alpha;
    const double val = adaptive_quad(
        [&](double u) { return tau_prime_of(m, t - std::pow(u, 1.0 / e)); },
        0.0, std::pow(t, e), 1e-13);
    return val / std::tgamma(2.0 - alpha);
  };
  const auto dtau_gate = [&](double t) -> double {
    if (!am.distributed) return caputo_gate(am.alpha, t);
    if (st == SourceTime::midpoint) {
      double s = 0.0;
      for (int j = 0; j < am.mq; ++j)
        s += caputo_gate((2.0 * j + 1.0) / (2.0 * am.mq), t);
      return s / am.mq;
    }
    return adaptive_quad(
        [&](double a) { return caputo_gate(clamp_alpha(a), t); }, 0.0, 1.0,
        1e-11);
  };

  // Nonlocal factor by quadrature of the one-sided integrals of V' (split
  // at the breaks, each segment transformed by v = |x-e|^mu so the kernel
  // is absorbed), then a first difference in x.
  const PiecewisePoly w = c.profile.derivative();
  const double mu = 2.0 - beta;
  const double cb = 1.0 / (2.0 * std::cos(mu * M_PI / 2.0));
  const double gmu1 = std::tgamma(mu + 1.0);
  const auto& bks = c.profile.breaks;
  const auto lmu_w = [&](double x) -> double {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < bks.size(); ++i) {
      const double a = bks[i], b2 = std::min(bks[i + 1], x);
      if (a >= x) break;
      if (b2 <= a) continue;
      acc += adaptive_quad(
          [&](double v) { return w.eval(x - std::pow(v, 1.0 / mu)); },
          std::pow(x - b2, mu), std::pow(x - a, mu), 1e-13);
    }
    for (std::size_t i = 0; i + 1 < bks.size(); ++i) {
      const double a = std::max(bks[i], x), b2 = bks[i + 1];
      if (b2 <= x) continue;
      acc += adaptive_quad(
          [&](double v) { return w.eval(x + std::pow(v, 1.0 / mu)); },
          std::pow(a - x, mu), std::pow(b2 - x, mu), 1e-13);
    }
    return cb * acc / gmu1;
  };

  static const double d1[7] = {-1, 9, -45, 0, 45, -9, 1};
  static const double d2[7] = {2, -27, 270, -490, 270, -27, 2};
  const double b = prob.b;
  const double s0 = prob.diff.constant ? prob.diff.value : 0.0;

  double worst = 0.0;
  for (double x : xs) {
    double psi_st[7];
    for (int i = -3; i <= 3; ++i) psi_st[i + 3] = c.profile.eval(x + i * fdh);
    double rquad = 0.0;
    if (b > 0.0) {
      for (int i = -3; i <= 3; ++i)
        if (d1[i + 3] != 0.0) rquad += d1[i + 3] * lmu_w(x + i * fdh);
      rquad /= 60.0 * fdh;
    }
    for (int j = 1; j <= nt; ++j) {
      const double t = c.t_end * j / nt;
      const double taut = tau_of(m, t);
      double res = dtau_gate(t) * psi_st[3];
      if (!prob.conv.none) {
        double fx = 0.0;
        for (int i = 0; i < 7; ++i)
          fx += d1[i] * prob.conv.f(taut * psi_st[i]);
        res += fx / (60.0 * fdh);
      }
      if (s0 > 0.0) {
        double vxx = 0.0;
        for (int i = 0; i < 7; ++i) vxx += d2[i] * psi_st[i];
        res -= s0 * taut * vxx / (180.0 * fdh * fdh);
      }
      if (b > 0.0) res -= b * taut * rquad;
      res -= source_value(g, x, t);
      worst = std::max(worst, std::abs(res));
    }
  }
  return worst;
}

CaseRun run_case(const ManufacturedCase& c, const RunSpec& spec) {
  Mesh1D mesh(c.xl, c.xr, spec.n);
  LdgProblem prob = make_problem(c, spec.beta);
  prob.sigma = spec.sigma;
  LdgDiscretization disc(mesh, spec.k, prob);
  const double dt = c.t_end / spec.mt;
  TimeFractional tf = bind_time(spec.amode, dt, spec.mt);
  SeparableSource g = derive_source(c, spec.beta, spec.amode,
                                    spec.source_time, &tf);
  GridFunction v0 = l2_project(
      [&c](double x) { return c.exact(x, 0.0); }, mesh, spec.k, spec.k + 5);
  RunResult r = march(disc, tf, v0.coef, g, spec.solver);

  CaseRun out;
  out.v = r.v;
  GridFunction vf(mesh, spec.k);
  vf.coef = out.v;
  out.error =
      l2_error(vf, [&](double x) { return c.exact(x, c.t_end); });
  out.reports = std::move(r.reports);
  out.total_iterations = r.total_iterations;
  return out;
}

std::string axis_name(StudyAxis axis) {
  switch (axis) {
    case StudyAxis::h: return "h";
    case StudyAxis::dt: return "dt";
    case StudyAxis::p: return "p";
  }
  return "?";
}

ConvergenceTable convergence_study(const ManufacturedCase& c, StudyAxis axis,
                                   const std::vector<int>& levels,
                                   const RunSpec& base) {
  if (levels.size() < 2)
    throw std::invalid_argument("convergence_study: need >= 2 levels");

  ConvergenceTable t;
  t.axis = axis_name(axis);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", base.beta);
  t.meta.push_back({"case", c.name});
  t.meta.push_back({"beta", buf});
  t.meta.push_back({"k", std::to_string(base.k)});
  if (base.amode.distributed) {
    t.meta.push_back({"alpha_mode", "distributed"});
  } else {
    t.meta.push_back({"alpha_mode", "single"});
    std::snprintf(buf, sizeof buf, "%.6g", base.amode.alpha);
    t.meta.push_back({"alpha", buf});
  }
  if (axis != StudyAxis::h) t.meta.push_back({"n", std::to_string(base.n)});
  if (axis != StudyAxis::dt) t.meta.push_back({"mt", std::to_string(base.mt)});
  if (axis != StudyAxis::p && base.amode.distributed)
    t.meta.push_back({"mq", std::to_string(base.amode.mq)});
  t.meta.push_back(
      {"source",
       base.source_time == SourceTime::exact      ? "exact"
       : base.source_time == SourceTime::midpoint ? "midpoint"
       : base.source_time == SourceTime::discrete ? "discrete"
                                                  : "discrete_time"});

  double prev_err = 0.0;
  long long prev_res = 0;
  for (int lv : levels) {
    RunSpec spec = base;
    switch (axis) {
      case StudyAxis::h: spec.n = lv; break;
      case StudyAxis::dt: spec.mt = lv; break;
      case StudyAxis::p:
        spec.amode.distributed = true;
        spec.amode.mq = lv;
        break;
    }
    CaseRun run;
    try {
      run = run_case(c, spec);
    } catch (const std::exception& e) {
      throw std::runtime_error("convergence_study: level " + t.axis + "=" +
                               std::to_string(lv) + " failed: " + e.what());
    }
    StudyRow row;
    row.resolution = lv;
    row.error = run.error;
    if (!t.rows.empty()) {
      row.order = (std::log(prev_err) - std::log(run.error)) /
                  std::log(static_cast<double>(lv) / prev_res);
      row.has_order = true;
    }
    t.rows.push_back(row);
    prev_err = run.error;
    prev_res = lv;
  }
  return t;
}

std::string emit_table(const ConvergenceTable& t, const std::string& format) {
  std::ostringstream os;
  char e[32], o[32];
  if (format == "csv") {
    os << "# axis=" << t.axis << "\n";
    for (const auto& kv : t.meta)
      os << "# " << kv.first << "=" << kv.second << "\n";
    os << "resolution,error,order\n";
    for (const auto& r : t.rows) {
      std::snprintf(e, sizeof e, "%.2e", r.error);
      os << r.resolution << "," << e << ",";
      if (r.has_order) {
        std::snprintf(o, sizeof o, "%.2f", r.order);
        os << o;
      }
      os << "\n";
    }
    return os.str();
  }
  if (format == "markdown") {
    os << "| resolution | error | order |\n|---:|---:|---:|\n";
    for (const auto& r : t.rows) {
      std::snprintf(e, sizeof e, "%.2e", r.error);
      os << "| " << r.resolution << " | " << e << " | ";
      if (r.has_order) {
        std::snprintf(o, sizeof o, "%.2f", r.order);
        os << o;
      } else {
        os << "--";
      }
      os << " |\n";
    }
    return os.str();
  }
  throw std::invalid_argument("emit_table: unknown format " + format);
}

ConvergenceTable parse_table(const std::string& csv) {
  ConvergenceTable t;
  std::istringstream is(csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      const auto start = body.find_first_not_of(' ');
      if (start == std::string::npos) continue;
      body = body.substr(start);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = body.substr(0, eq), val = body.substr(eq + 1);
      if (key == "axis")
        t.axis = val;
      else
        t.meta.push_back({key, val});
      continue;
    }
    if (!header_seen) {
      if (line != "resolution,error,order")
        throw std::runtime_error("parse_table: bad header: " + line);
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::runtime_error("parse_table: bad row: " + line);
    StudyRow r;
    r.resolution = std::stoll(line.substr(0, c1));
    r.error = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const std::string ord = line.substr(c2 + 1);
    if (!ord.empty()) {
      r.order = std::stod(ord);
      r.has_order = true;
    }
    t.rows.push_back(r);
  }
  if (!header_seen) throw std::runtime_error("parse_table: no header");
  return t;
}

bool operator==(const ConvergenceTable& a, const ConvergenceTable& b) {
  return emit_table(a, "csv") == emit_table(b, "csv");
}

std::string emit_gnuplot(const ConvergenceTable& t) {
  std::ostringstream os;
  char buf[80];
  for (const auto& r : t.rows) {
    std::snprintf(buf, sizeof buf, "%.12g %.12g\n",
                  std::log10(static_cast<double>(r.resolution)),
                  std::log10(r.error));
    os << buf;
  }
  return os.str();
}

}  // namespace fracldg
