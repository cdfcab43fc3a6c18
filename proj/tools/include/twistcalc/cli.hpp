#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistcalc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kExpectFailed = 2,
  kCapExceeded = 3,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistcalc::cli
