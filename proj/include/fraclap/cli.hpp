#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraclap::cli {

enum ExitCode : int { kPass = 0, kAssertionFailure = 1, kUsageError = 2, kNumericalFailure = 3 };

/// Runs the command line front end; args excludes the program name.
/// Reports go to out (or the --out file), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraclap::cli
