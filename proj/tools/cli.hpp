#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rankgap::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kBudgetError = 3,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out`, one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace rankgap::cli
