#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairemit::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDegenerateState = 2,
  kOracleFailure = 3,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"fig2", "--s", "0.7", "--out", "curves.csv"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairemit::cli
