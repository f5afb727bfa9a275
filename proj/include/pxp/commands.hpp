#pragma once

#include <exception>
#include <ostream>

#include "pxp/config.hpp"

namespace pxp {

/// Process exit statuses.
enum ExitStatus : int {
  kExitOk = 0,
  kExitFailure = 1,      // anything unexpected
  kExitUsage = 2,        // bad flags, config file or parameters
  kExitIntegration = 3,  // propagator lost unitarity
  kExitFit = 4,          // revival-index fit failed
  kExitIo = 5,           // output could not be written
  kExitAnalysis = 6,     // Floquet decomposition failed or no arc of dominant states
};

int exit_status_for(const std::exception& e);

/// Runs one subcommand, writes its CSVs plus manifest.json into
/// config.output and returns the exit status. Failures after the output
/// directory exists still produce a manifest flagged as partial.
int run_command(const RunConfig& config, std::ostream& log);

/// argv parsing plus run_command; help goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pxp
