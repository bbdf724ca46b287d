#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace connexive {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // unprovable or rejected
  kExitUsage = 2,     // usage or I/O error
  kExitBudget = 3,
};

/// Runs one invocation; `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace connexive
