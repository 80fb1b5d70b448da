#pragma once

// Runs construction scripts. Statements execute in order; a failed assert
// prints the counterexample and the run continues, an error stops it.

#include "swcalc/cli/script.hpp"

#include <cstddef>
#include <ostream>
#include <string_view>

namespace swcalc::cli {

struct RunOptions {
  bool json = false;
  std::size_t node_budget = 1'000'000;
  int threads = 1;
};

enum ExitCode : int { kExitOk = 0, kExitAssert = 1, kExitError = 2 };

/// Output goes to `out`; errors go to `err` (to `out` as JSON lines with --json).
int run(const Script& script, const RunOptions& opts, std::ostream& out, std::ostream& err);
/// Parses and runs; parse errors exit with kExitError.
int run_text(std::string_view text, const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace swcalc::cli
