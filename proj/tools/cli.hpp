#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace districtor::cli {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInputError = 2;

/// Runs the tool on `args` (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace districtor::cli
