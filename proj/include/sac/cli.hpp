#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sac {

/// Exit codes of the command-line tool.
enum ExitStatus : int {
    kExitOk = 0,
    kExitFindings = 1,  // at least one Error (or Warning under --strict-warnings)
    kExitFailure = 2,   // parse, IO or usage failure
};

/// Runs the `sac` command line. `args` excludes the program name. Reports go
/// to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sac
