#ifndef RECOVERCAST_CLI_HPP
#define RECOVERCAST_CLI_HPP

#include <iosfwd>

namespace recovercast {

inline constexpr const char* kToolVersion = "0.1.0";

/// Process exit codes; a stable contract for scripts.
enum ExitCode : int {
    kExitOk = 0,
    kExitDataError = 2,
    kExitConfigError = 3,
    kExitCheckpointError = 4,
};

/// Entry point for the `recovercast` tool (inspect, train, forecast, evaluate).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace recovercast

#endif  // RECOVERCAST_CLI_HPP
