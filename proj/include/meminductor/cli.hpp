#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meminductor {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,       // netlist parse or validation error
  kExitSimulation = 3,  // simulation or output failure
};

/// Subcommands: simulate, hysteresis, rho-q, amoeba. Nothing is written to
/// the output directory unless the whole run succeeds.
int run_cli(int argc, char** argv);

/// Same, with the program name omitted from `args` and explicit streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meminductor
