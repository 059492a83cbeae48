#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orca::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kDegenerate = 3,
  kIo = 4,
  kNotConverged = 5,
};

/// Default cap on (n + 1)^d for commands that build coefficient tensors.
inline constexpr unsigned long long kDefaultModeBudget = 1ull << 26;

/// Runs the command line `args` (without the program name). Normal output goes
/// to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orca::cli
