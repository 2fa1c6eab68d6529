#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qine::cli {

/// Exit codes of `qine`.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kLimitStop = 2;

/// Runs the command line `args` (args[0] is the program name).  The report
/// goes to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qine::cli
