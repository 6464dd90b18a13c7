#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualmat::cli {

enum ExitCode : int {
  kOk = 0,
  kDoesNotExist = 1,  // dmpgi / dggi / group-ess / inv nonexistence, verify violations
  kUsage = 2,         // bad flags, unreadable or malformed input, wrong shape
  kNumerical = 3,     // convergence or degenerate coupling failures
};

/// Runs one CLI invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualmat::cli
