#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orthoclone::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kNonConvergence = 3,
};

/// Runs the command line `args` (program name excluded). Data goes to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Fixed-precision renderings shared by every table: 12 significant digits
/// for CSV, values rounded to 15 significant digits for JSON.
std::string csv_number(double value);
double json_number(double value);

}  // namespace orthoclone::cli
