// SPDX-License-Identifier: Apache-2.0
/// @file config.hpp
/// @brief Batch-run configuration: INI-style parsing with full violation
///        collection, serialization (round-trip identical), and subcommand
///        dispatch with the documented exit codes.
///
/// Config format: UTF-8 lines of `key = value` under `[section]` headers,
/// `#` starts a comment.  Sections/keys:
///   [run]            subcommand (solve|converge|stability|kernels),
///                    out, diagnostics, gnuplot, format (csv|markdown)
///   [problem]        case (example1|example2|example3), beta, sigma,
///                    t_end (0 = case default) and the optional overrides
///                    conv (none|linear|burgers|quartic),
///                    diff (zero|one|square), b (>= 0, -1 = case default)
///   [alpha]          mode (distributed|single), alpha, mq
///   [discretization] n, k, mt,
///                    source (exact|midpoint|discrete|discrete_time|none)
///   [converge]       axis (h|dt|p), levels (comma-separated)
///   [stability]      steps
///   [solver]         picard_tol, picard_max
///   [kernels]        alpha, count, dt, riesz_n (0 = no dump),
///                    dump (csv|binary)
///
/// Exit codes: 0 success, 2 config error (no artifact written), 3 solver
/// nonconvergence, 4 invariant violation (e.g. a stability breach).

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracldg {

struct RunConfig {
  // [run]
  std::string subcommand = "solve";
  std::string out;          ///< primary artifact path ("" = stdout/none)
  std::string diagnostics;  ///< per-step records path ("" = skip)
  std::string gnuplot;      ///< log-log data path ("" = skip)
  std::string format = "csv";

  // [problem]
  std::string case_name = "example1";
  double beta = 1.5;
  double sigma = 1.0;
  double t_end = 0.0;     ///< 0 = case default
  std::string conv;       ///< "" = case default
  std::string diff;       ///< "" = case default
  double b_override = -1.0;  ///< < 0 = case default

  // [alpha]
  std::string alpha_mode = "distributed";
  double alpha = 0.5;
  int mq = 50;  ///< p = 1/50 default

  // [discretization]
  int n = 40;
  int k = 1;
  int mt = 500;  ///< dt = T/500 default
  std::string source = "exact";

  // [converge]
  std::string axis = "h";
  std::vector<int> levels = {10, 20, 40, 80};

  // [stability]
  int steps = 500;

  // [solver]
  double picard_tol = 1e-10;
  int picard_max = 50;

  // [kernels]
  double kern_alpha = 0.5;
  int kern_count = 3;
  double kern_dt = 0.1;
  int riesz_n = 0;
  std::string dump = "csv";
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parse result: either a validated config or every violation found (range
/// errors, unknown keys/sections, malformed lines), never just the first.
struct ConfigResult {
  RunConfig config;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

ConfigResult parse_config(const std::string& text);

/// Canonical INI text; parse_config(serialize_config(c)).config == c.
std::string serialize_config(const RunConfig& c);

/// Write-temp-then-rename; throws std::runtime_error on I/O failure.
void write_atomic(const std::string& path, const std::string& content);

/// Run the subcommand, writing artifacts and informational output.
/// Returns the process exit code (0, 3, or 4; config errors are the
/// caller's to report as 2 before dispatch).
int dispatch(const RunConfig& cfg, std::ostream& info, std::ostream& err);

}  // namespace fracldg
