#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mateq::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kSolverFailure = 1, kUsageError = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and "error: ..." lines to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mateq::cli
