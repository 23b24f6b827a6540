#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and returns the process exit status.

#include <iosfwd>
#include <string>
#include <vector>

namespace qzeros::cli {

enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kDomain = 2,
  kGuard = 3,
  kUsage = 64,
};

/// Environment variable holding the default precision in bits.
inline constexpr const char* kPrecisionEnv = "QZEROS_PRECISION";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qzeros::cli
