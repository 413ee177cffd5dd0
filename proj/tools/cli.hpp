#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chaplygin::cli {

// 0 success/verified, 1 verification failed, 2 usage/config error, 3 numerical failure.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kNumericalFailure = 3,
};

// Runs one `piston` command; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chaplygin::cli
