#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quatfhe::cli {

/// Process exit codes. Stable across versions.
enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kUsageError = 2,
  kVerificationFailed = 3,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace quatfhe::cli
