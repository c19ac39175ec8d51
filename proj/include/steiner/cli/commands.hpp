#pragma once

#include <ostream>

namespace steiner::cli {

enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitParse = 2,
    kExitPrecondition = 3,
    kExitUnsupported = 4,
};

/// Entry point of the `steiner` tool. Reports go to `out` (or to --out files), diagnostics to
/// `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace steiner::cli
