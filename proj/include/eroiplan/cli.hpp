#pragma once

#include <string>
#include <vector>

namespace eroiplan {

/// Command-line entry point (args excludes the program name).
/// Subcommands: run, sweep, gsa, report, export-lp.
/// Exit codes: 0 success, 2 infeasible primary solve, 64 usage error,
/// 1 any other failure.
int run_cli(const std::vector<std::string>& args);

} // namespace eroiplan
