#pragma once

#include <ostream>

namespace fracent::tools {

// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,    // I/O or usage error
    kExitDomain = 2,   // domain or precondition error
    kExitNumeric = 3,  // numeric non-convergence
};

/// Runs the `fracent` command line. Reports go to `out` (or the --out file),
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracent::tools
