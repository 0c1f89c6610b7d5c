#pragma once

#include <ostream>

namespace greycast {

/// Exit codes returned by the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidInput = 2,
    kExitCalibrationFailed = 3,
    kExitIo = 4,
};

/// Entry point of the `greycast` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace greycast
