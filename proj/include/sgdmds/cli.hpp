#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgdmds::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kSolverFailure = 3,
};

/// Entry point for the `sgdmds` command line (subcommands embed, bench,
/// scaling, gen). `args` excludes the program name. Diagnostics are written
/// as one line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace sgdmds::cli
