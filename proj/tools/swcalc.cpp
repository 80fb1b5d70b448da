// swcalc: run a construction script from a file or stdin.

#include "swcalc/cli/interpreter.hpp"
#include "swcalc/parallel.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef SWCALC_VERSION
#define SWCALC_VERSION "0.0.0"
#endif

int main(int argc, char** argv) {
  CLI::App app{"Seiberg-Witten invariants of 4-manifold constructions"};
  std::string file;
  swcalc::cli::RunOptions opts;
  app.add_option("script", file, "Script file (stdin when omitted)");
  app.add_flag("--json", opts.json, "One JSON object per output line");
  app.add_option("--node-budget", opts.node_budget, "Skein resolution node limit")->check(CLI::PositiveNumber);
  app.add_option("--threads", opts.threads, "Worker threads for the parallel kernels")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", std::string("swcalc ") + SWCALC_VERSION);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : swcalc::cli::kExitError;
  }

  std::stringstream text;
  if (file.empty() || file == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read '" << file << "'\n";
      return swcalc::cli::kExitError;
    }
    text << in.rdbuf();
  }
  return swcalc::cli::run_text(text.str(), opts, std::cout, std::cerr);
}
