#pragma once

#include <ostream>

namespace symqm {

/// Exit codes of the command-line interface.
enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitRuntimeError = 2 };

/// Entry point of the `symqm` tool. Subcommands:
///   experiment <name> [--config F] --seed S [--trials N] [--out D] [--csv]
///   born-scan [--states N] [--seed S] [--out D]
///   gibbs --config F [--seed S] [--out D]
///   sweep --config F [--seed S] [--out D]
/// Results go to <out>/<name>-<seed>/summary.json (+ CSV data).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symqm
