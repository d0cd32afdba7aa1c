#pragma once

namespace otdp {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kIoError = 3,
    kValidationError = 4,
};

/// Full command-line entry point (generate, fit, sweep, verify-dp,
/// verify-packing, covering-stats, kde). Catches everything and maps it to
/// an exit code, so it is safe to call in-process.
int run_cli(int argc, const char* const* argv);

}  // namespace otdp
