// SPDX-License-Identifier: Apache-2.0

#include "fracldg/config.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fracldg/mms.hpp"

namespace fracldg {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool to_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool to_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(s.c_str(), &end, 10);
  return end == s.c_str() + s.size();
}

bool one_of(const std::string& v, std::initializer_list<const char*> opts) {
  for (const char* o : opts)
    if (v == o) return true;
  return false;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt8(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

std::string join8(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt8(v[i]);
  }
  return s;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.subcommand == b.subcommand && a.out == b.out &&
         a.diagnostics == b.diagnostics && a.gnuplot == b.gnuplot &&
         a.format == b.format && a.case_name == b.case_name &&
         a.beta == b.beta && a.sigma == b.sigma && a.t_end == b.t_end &&
         a.conv == b.conv && a.diff == b.diff &&
         a.b_override == b.b_override && a.alpha_mode == b.alpha_mode &&
         a.alpha == b.alpha && a.mq == b.mq && a.n == b.n && a.k == b.k &&
         a.mt == b.mt && a.source == b.source && a.axis == b.axis &&
         a.levels == b.levels && a.steps == b.steps &&
         a.picard_tol == b.picard_tol && a.picard_max == b.picard_max &&
         a.kern_alpha == b.kern_alpha && a.kern_count == b.kern_count &&
         a.kern_dt == b.kern_dt && a.riesz_n == b.riesz_n && a.dump == b.dump;
}

ConfigResult parse_config(const std::string& text) {
  ConfigResult res;
  RunConfig& c = res.config;
  auto err = [&res](const std::string& m) { res.errors.push_back(m); };

  std::istringstream is(text);
  std::string line, sec;
  bool sec_known = true;
  int ln = 0;

  auto num = [&](const std::string& where, const std::string& val,
                 double& dst) {
    double v;
    if (to_double(val, v))
      dst = v;
    else
      err(where + ": not a number: '" + val + "'");
  };
  auto integer = [&](const std::string& where, const std::string& val,
                     int& dst) {
    long long v;
    if (to_int(val, v) && v >= INT32_MIN && v <= INT32_MAX)
      dst = static_cast<int>(v);
    else
      err(where + ": not an integer: '" + val + "'");
  };

  while (std::getline(is, line)) {
    ++ln;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        err("line " + std::to_string(ln) + ": malformed section header");
        continue;
      }
      sec = trim(line.substr(1, line.size() - 2));
      sec_known = one_of(sec, {"run", "problem", "alpha", "discretization",
                               "converge", "stability", "solver", "kernels"});
      if (!sec_known)
        err("line " + std::to_string(ln) + ": unknown section [" + sec + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      err("line " + std::to_string(ln) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!sec_known) continue;  // covered by the section error
    const std::string where = sec + "." + key;

    if (sec == "run") {
      if (key == "subcommand") c.subcommand = val;
      else if (key == "out") c.out = val;
      else if (key == "diagnostics") c.diagnostics = val;
      else if (key == "gnuplot") c.gnuplot = val;
      else if (key == "format") c.format = val;
      else err("unknown key: " + where);
    } else if (sec == "problem") {
      if (key == "case") c.case_name = val;
      else if (key == "beta") num(where, val, c.beta);
      else if (key == "sigma") num(where, val, c.sigma);
      else if (key == "t_end") num(where, val, c.t_end);
      else if (key == "conv") c.conv = val;
      else if (key == "diff") c.diff = val;
      else if (key == "b") num(where, val, c.b_override);
      else err("unknown key: " + where);
    } else if (sec == "alpha") {
      if (key == "mode") c.alpha_mode = val;
      else if (key == "alpha") num(where, val, c.alpha);
      else if (key == "mq") integer(where, val, c.mq);
      else err("unknown key: " + where);
    } else if (sec == "discretization") {
      if (key == "n") integer(where, val, c.n);
      else if (key == "k") integer(where, val, c.k);
      else if (key == "mt") integer(where, val, c.mt);
      else if (key == "source") c.source = val;
      else err("unknown key: " + where);
    } else if (sec == "converge") {
      if (key == "axis") c.axis = val;
      else if (key == "levels") {
        c.levels.clear();
        std::istringstream ls(val);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
          long long v;
          if (to_int(trim(tok), v))
            c.levels.push_back(static_cast<int>(v));
          else
            err(where + ": not an integer: '" + trim(tok) + "'");
        }
      } else err("unknown key: " + where);
    } else if (sec == "stability") {
      if (key == "steps") integer(where, val, c.steps);
      else err("unknown key: " + where);
    } else if (sec == "solver") {
      if (key == "picard_tol") num(where, val, c.picard_tol);
      else if (key == "picard_max") integer(where, val, c.picard_max);
      else err("unknown key: " + where);
    } else if (sec == "kernels") {
      if (key == "alpha") num(where, val, c.kern_alpha);
      else if (key == "count") integer(where, val, c.kern_count);
      else if (key == "dt") num(where, val, c.kern_dt);
      else if (key == "riesz_n") integer(where, val, c.riesz_n);
      else if (key == "dump") c.dump = val;
      else err("unknown key: " + where);
    } else {
      err("line " + std::to_string(ln) + ": key outside any section");
    }
  }

  // Range and coherence checks (defaults always pass).
  if (!one_of(c.subcommand, {"solve", "converge", "stability", "kernels"}))
    err("run.subcommand: expected solve|converge|stability|kernels, got '" +
        c.subcommand + "'");
  if (!one_of(c.format, {"csv", "markdown"}))
    err("run.format: expected csv|markdown, got '" + c.format + "'");
  if (!one_of(c.case_name, {"example1", "example2", "example3"}))
    err("problem.case: expected example1|example2|example3, got '" +
        c.case_name + "'");
  if (!(c.beta > 1.0 && c.beta < 2.0))
    err("problem.beta: must lie in (1,2), got " + fmt_double(c.beta));
  if (!(c.sigma >= 0.0))
    err("problem.sigma: must be >= 0, got " + fmt_double(c.sigma));
  if (c.t_end < 0.0)
    err("problem.t_end: must be positive (0 = case default), got " +
        fmt_double(c.t_end));
  if (!c.conv.empty() &&
      !one_of(c.conv, {"none", "linear", "burgers", "quartic"}))
    err("problem.conv: expected none|linear|burgers|quartic, got '" + c.conv +
        "'");
  if (!c.diff.empty() && !one_of(c.diff, {"zero", "one", "square"}))
    err("problem.diff: expected zero|one|square, got '" + c.diff + "'");
  if (!one_of(c.alpha_mode, {"distributed", "single"}))
    err("alpha.mode: expected distributed|single, got '" + c.alpha_mode + "'");
  if (!(c.alpha > 0.0 && c.alpha <= 1.0))
    err("alpha.alpha: must lie in (0,1], got " + fmt_double(c.alpha));
  if (c.mq < 1) err("alpha.mq: must be >= 1, got " + std::to_string(c.mq));
  if (c.n < 2) err("discretization.n: must be >= 2, got " + std::to_string(c.n));
  if (c.k < 1 || c.k > 4)
    err("discretization.k: the projection machinery supports k in [1,4], "
        "got " + std::to_string(c.k));
  if (c.mt < 1)
    err("discretization.mt: must be >= 1, got " + std::to_string(c.mt));
  if (!one_of(c.source,
              {"exact", "midpoint", "discrete", "discrete_time", "none"}))
    err("discretization.source: expected "
        "exact|midpoint|discrete|discrete_time|none, got '" +
        c.source + "'");
  if (!one_of(c.axis, {"h", "dt", "p"}))
    err("converge.axis: expected h|dt|p, got '" + c.axis + "'");
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    if (c.levels[i] < (c.axis == "h" ? 2 : 1))
      err("converge.levels: level " + std::to_string(c.levels[i]) +
          " too small");
    if (i > 0 && c.levels[i] <= c.levels[i - 1])
      err("converge.levels: must increase strictly");
  }
  if (c.steps < 1)
    err("stability.steps: must be >= 1, got " + std::to_string(c.steps));
  if (!(c.picard_tol > 0.0))
    err("solver.picard_tol: must be > 0, got " + fmt_double(c.picard_tol));
  if (c.picard_max < 1)
    err("solver.picard_max: must be >= 1, got " + std::to_string(c.picard_max));
  if (!(c.kern_alpha > 0.0 && c.kern_alpha <= 1.0))
    err("kernels.alpha: must lie in (0,1], got " + fmt_double(c.kern_alpha));
  if (c.kern_count < 1)
    err("kernels.count: must be >= 1, got " + std::to_string(c.kern_count));
  if (!(c.kern_dt > 0.0))
    err("kernels.dt: must be > 0, got " + fmt_double(c.kern_dt));
  if (c.riesz_n != 0 && c.riesz_n < 2)
    err("kernels.riesz_n: must be 0 (no dump) or >= 2, got " +
        std::to_string(c.riesz_n));
  if (!one_of(c.dump, {"csv", "binary"}))
    err("kernels.dump: expected csv|binary, got '" + c.dump + "'");
  if (c.subcommand == "converge") {
    if (c.levels.size() < 2) err("converge.levels: need at least 2 levels");
    if (c.source == "none")
      err("converge: needs a manufactured source (discretization.source != "
          "none)");
  }
  if (c.diff == "square" && c.source != "none" &&
      (c.subcommand == "solve" || c.subcommand == "converge"))
    err("problem.diff: square diffusion has no manufactured source; set "
        "discretization.source = none");
  if (c.subcommand == "kernels" && c.riesz_n > 0 && c.out.empty())
    err("kernels.riesz_n: a matrix dump needs run.out");

  return res;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[run]\n";
  os << "subcommand = " << c.subcommand << "\n";
  os << "out = " << c.out << "\n";
  os << "diagnostics = " << c.diagnostics << "\n";
  os << "gnuplot = " << c.gnuplot << "\n";
  os << "format = " << c.format << "\n";
  os << "\n[problem]\n";
  os << "case = " << c.case_name << "\n";
  os << "beta = " << fmt_double(c.beta) << "\n";
  os << "sigma = " << fmt_double(c.sigma) << "\n";
  os << "t_end = " << fmt_double(c.t_end) << "\n";
  os << "conv = " << c.conv << "\n";
  os << "diff = " << c.diff << "\n";
  os << "b = " << fmt_double(c.b_override) << "\n";
  os << "\n[alpha]\n";
  os << "mode = " << c.alpha_mode << "\n";
  os << "alpha = " << fmt_double(c.alpha) << "\n";
  os << "mq = " << c.mq << "\n";
  os << "\n[discretization]\n";
  os << "n = " << c.n << "\n";
  os << "k = " << c.k << "\n";
  os << "mt = " << c.mt << "\n";
  os << "source = " << c.source << "\n";
  os << "\n[converge]\n";
  os << "axis = " << c.axis << "\n";
  os << "levels = ";
  for (std::size_t i = 0; i < c.levels.size(); ++i)
    os << (i ? "," : "") << c.levels[i];
  os << "\n";
  os << "\n[stability]\n";
  os << "steps = " << c.steps << "\n";
  os << "\n[solver]\n";
  os << "picard_tol = " << fmt_double(c.picard_tol) << "\n";
  os << "picard_max = " << c.picard_max << "\n";
  os << "\n[kernels]\n";
  os << "alpha = " << fmt_double(c.kern_alpha) << "\n";
  os << "count = " << c.kern_count << "\n";
  os << "dt = " << fmt_double(c.kern_dt) << "\n";
  os << "riesz_n = " << c.riesz_n << "\n";
  os << "dump = " << c.dump << "\n";
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("write_atomic: cannot open " + tmp);
    os.write(content.data(),
             static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) throw std::runtime_error("write_atomic: write failed on " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("write_atomic: rename to " + path + " failed");
}

namespace {

std::string diagnostics_text(const std::vector<StepReport>& reports) {
  std::ostringstream os;
  os << "step,t,iterations,residual,norm\n";
  char buf[160];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%d,%.10g,%d,%.3e,%.10g\n", r.step, r.t,
                  r.iterations, r.residual, r.norm);
    os << buf;
  }
  return os.str();
}

std::string coefficients_text(const std::vector<double>& v, int k,
                              const std::vector<std::pair<std::string,
                                                          std::string>>& meta) {
  std::ostringstream os;
  for (const auto& kv : meta) os << "# " << kv.first << "=" << kv.second << "\n";
  os << "element,mode,coef\n";
  char buf[64];
  const int kp = k + 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    os << (i / kp) << "," << (i % kp) << "," << buf << "\n";
  }
  return os.str();
}

SourceTime source_from(const std::string& s) {
  if (s == "exact") return SourceTime::exact;
  if (s == "midpoint") return SourceTime::midpoint;
  if (s == "discrete_time") return SourceTime::discrete_time;
  return SourceTime::discrete;
}

StudyAxis axis_from(const std::string& s) {
  if (s == "h") return StudyAxis::h;
  if (s == "dt") return StudyAxis::dt;
  return StudyAxis::p;
}

int run_kernels(const RunConfig& cfg, std::ostream& info) {
  const std::vector<double> a = l1_coefficients(cfg.kern_alpha, cfg.kern_count);
  info << "a[alpha=" << fmt8(cfg.kern_alpha) << ",n=" << cfg.kern_count
       << "]: " << join8(a) << "\n";
  info << "lambda[alpha=" << fmt8(cfg.kern_alpha) << ",dt="
       << fmt8(cfg.kern_dt)
       << "]: " << fmt8(lambda_factor(cfg.kern_alpha, cfg.kern_dt)) << "\n";
  if (cfg.alpha_mode == "distributed") {
    const DistributedRule rule = distributed_rule(cfg.mq);
    std::vector<double> lam(rule.nodes.size());
    for (std::size_t j = 0; j < lam.size(); ++j)
      lam[j] = lambda_factor(rule.nodes[j], cfg.kern_dt);
    info << "alpha_j: " << join8(rule.nodes) << "\n";
    info << "lambda_j[dt=" << fmt8(cfg.kern_dt) << "]: " << join8(lam) << "\n";
  }
  if (cfg.riesz_n >= 2) {
    const Mesh1D mesh(0.0, 1.0, cfg.riesz_n);
    const RieszOperator r = assemble_riesz_matrix(mesh, cfg.k, cfg.beta);
    std::string content;
    if (cfg.dump == "csv") {
      std::ostringstream os;
      os << r.n << "," << r.k << "," << fmt_double(r.beta) << "\n";
      char buf[40];
      const int d = r.dim();
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          std::snprintf(buf, sizeof buf, "%.17g", r.mat[i * d + j]);
          os << (j ? "," : "") << buf;
        }
        os << "\n";
      }
      content = os.str();
    } else {
      const int32_t nn = r.n, kk = r.k;
      content.append(reinterpret_cast<const char*>(&nn), 4);
      content.append(reinterpret_cast<const char*>(&kk), 4);
      content.append(reinterpret_cast<const char*>(&r.beta), 8);
      content.append(reinterpret_cast<const char*>(r.mat.data()),
                     r.mat.size() * sizeof(double));
    }
    write_atomic(cfg.out, content);
    info << "riesz matrix (" << r.dim() << "x" << r.dim() << ") -> " << cfg.out
         << "\n";
  }
  return 0;
}

}  // namespace

int dispatch(const RunConfig& cfg, std::ostream& info, std::ostream& err) {
  try {
    if (cfg.subcommand == "kernels") return run_kernels(cfg, info);

    ManufacturedCase c = find_case(cfg.case_name);
    if (cfg.t_end > 0.0) c.t_end = cfg.t_end;
    if (!cfg.conv.empty()) c.conv_preset = cfg.conv;
    if (!cfg.diff.empty()) c.diff_preset = cfg.diff;
    if (cfg.b_override >= 0.0)
      c.b_of_beta = [v = cfg.b_override](double) { return v; };
    const AlphaMode am = cfg.alpha_mode == "single"
                             ? AlphaMode::single_order(cfg.alpha)
                             : AlphaMode::distributed_uniform(cfg.mq);
    SolverConfig scfg;
    scfg.picard_tol = cfg.picard_tol;
    scfg.picard_max = cfg.picard_max;

    if (cfg.subcommand == "converge") {
      RunSpec base;
      base.beta = cfg.beta;
      base.k = cfg.k;
      base.n = cfg.n;
      base.mt = cfg.mt;
      base.amode = am;
      base.source_time = source_from(cfg.source);
      base.sigma = cfg.sigma;
      base.solver = scfg;
      const ConvergenceTable t =
          convergence_study(c, axis_from(cfg.axis), cfg.levels, base);
      const std::string text = emit_table(t, cfg.format);
      if (!cfg.out.empty())
        write_atomic(cfg.out, text);
      else
        info << text;
      if (!cfg.gnuplot.empty()) write_atomic(cfg.gnuplot, emit_gnuplot(t));
      return 0;
    }

    if (cfg.subcommand == "solve") {
      std::vector<std::pair<std::string, std::string>> meta = {
          {"case", c.name}, {"beta", fmt_double(cfg.beta)},
          {"k", std::to_string(cfg.k)}, {"n", std::to_string(cfg.n)},
          {"mt", std::to_string(cfg.mt)}};
      std::vector<double> v;
      std::vector<StepReport> reports;
      if (cfg.source == "none") {
        const Mesh1D mesh(c.xl, c.xr, cfg.n);
        LdgProblem prob = make_problem(c, cfg.beta);
        prob.sigma = cfg.sigma;
        const LdgDiscretization disc(mesh, cfg.k, prob);
        const TimeFractional tf =
            bind_time(am, c.t_end / cfg.mt, cfg.mt);
        const GridFunction v0 = l2_project(
            [&c](double x) { return c.exact(x, 0.0); }, mesh, cfg.k,
            cfg.k + 5);
        RunResult r =
            march(disc, tf, v0.coef, SeparableSource::none(), scfg);
        v = std::move(r.v);
        reports = std::move(r.reports);
      } else {
        RunSpec spec;
        spec.beta = cfg.beta;
        spec.k = cfg.k;
        spec.n = cfg.n;
        spec.mt = cfg.mt;
        spec.amode = am;
        spec.source_time = source_from(cfg.source);
        spec.sigma = cfg.sigma;
        spec.solver = scfg;
        CaseRun r = run_case(c, spec);
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.10e", r.error);
        meta.push_back({"l2_error", buf});
        v = std::move(r.v);
        reports = std::move(r.reports);
      }
      if (!cfg.out.empty())
        write_atomic(cfg.out, coefficients_text(v, cfg.k, meta));
      for (const auto& kv : meta) info << kv.first << "=" << kv.second << "\n";
      if (!cfg.diagnostics.empty())
        write_atomic(cfg.diagnostics, diagnostics_text(reports));
      return 0;
    }

    // stability: g = 0, initial data from the case, norm per step.
    const Mesh1D mesh(c.xl, c.xr, cfg.n);
    LdgProblem prob = make_problem(c, cfg.beta);
    prob.sigma = cfg.sigma;
    const LdgDiscretization disc(mesh, cfg.k, prob);
    const TimeFractional tf =
        bind_time(am, c.t_end / cfg.mt, cfg.steps);
    const GridFunction v0 = l2_project(
        [&c](double x) { return c.exact(x, 0.0); }, mesh, cfg.k, cfg.k + 5);
    RunResult r = march(disc, tf, v0.coef, SeparableSource::none(), scfg);

    std::ostringstream os;
    os << "step,t,norm\n";
    char buf[80];
    double prev = coef_l2_norm(mesh, cfg.k, v0.coef);
    std::snprintf(buf, sizeof buf, "0,0,%.12g\n", prev);
    os << buf;
    bool breach = false;
    double worst = 0.0;
    for (const auto& rep : r.reports) {
      std::snprintf(buf, sizeof buf, "%d,%.10g,%.12g\n", rep.step, rep.t,
                    rep.norm);
      os << buf;
      if (prev > 0.0) worst = std::max(worst, rep.norm / prev - 1.0);
      if (rep.norm > prev * (1.0 + 1e-10)) breach = true;
      prev = rep.norm;
    }
    if (!cfg.out.empty()) write_atomic(cfg.out, os.str());
    if (!cfg.diagnostics.empty())
      write_atomic(cfg.diagnostics, diagnostics_text(r.reports));
    char wbuf[40];
    std::snprintf(wbuf, sizeof wbuf, "%.3e", worst);
    info << "stability: max relative step growth " << wbuf << "\n";
    if (breach) {
      err << "stability breach: the step norm grew beyond relative 1e-10\n";
      return 4;
    }
    return 0;
  } catch (const PicardFailure& e) {
    err << "solver nonconvergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "invariant violation: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace fracldg
