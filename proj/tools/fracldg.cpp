// SPDX-License-Identifier: Apache-2.0
//
// fracldg <config.ini>
//
// Reads one INI config, validates it fully (every violation is reported,
// not just the first), then dispatches on [run] subcommand. Exit codes:
//   0 success, 2 config error, 3 solver nonconvergence, 4 invariant breach.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fracldg/config.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: fracldg <config.ini>\n";
    return 2;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot read config file: " << argv[1] << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  const fracldg::ConfigResult parsed = fracldg::parse_config(buf.str());
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) std::cerr << "config error: " << e << "\n";
    return 2;
  }
  return fracldg::dispatch(parsed.config, std::cout, std::cerr);
}
