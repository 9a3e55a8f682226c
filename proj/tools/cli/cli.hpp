#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace empath::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // no solution, empathy check false, invalid plan, golden mismatch
  kUsage = 2,     // bad flags, missing file, parse or lint error
  kBudget = 3,
};

// args excludes the program name. Results go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace empath::cli
