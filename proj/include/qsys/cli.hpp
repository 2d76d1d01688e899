#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsys {

/// Exit codes: 0 pass, 1 verification or convergence failure, 2 usage error.
enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs the command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsys
