#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thd::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kValidationFailure = 1,
  kUsage = 2,
  kInternal = 3,
  /// query only: the target exists but is not reached.
  kUnreached = 4,
};

/// Runs the command line `args` (args[0] is the program name). Reports go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thd::cli
