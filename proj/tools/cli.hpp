#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swaplab::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kGuardExceeded = 3 };

/// Runs one `swaplab` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swaplab::cli
