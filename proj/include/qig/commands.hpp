#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qig::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kInvalidInput = 2 };

/// Entry point shared by the `qig` executable and the tests. `args` excludes
/// the program name. Subcommands: sqrt, metric, preimages, bounds, calibrate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qig::cli
