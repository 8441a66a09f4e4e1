#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tsurg::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

// Runs one command line (without the program name). Normal output goes to
// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsurg::cli
