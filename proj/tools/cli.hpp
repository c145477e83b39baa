#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psplit::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kNumerical = 3,
    kInvalidSplitting = 4,
};

/// Runs the command line with args[0] as the program name. Reports go to
/// `out` (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace psplit::cli
