#ifndef VORTEXLAB_EXPERIMENTS_HPP
#define VORTEXLAB_EXPERIMENTS_HPP

#include "vortexlab/config.hpp"
#include "vortexlab/output.hpp"

namespace vortexlab {

/// Exit codes of `run`.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitNumerical = 2,
    kExitGateFailed = 3,
};

/// Build the CSV outputs of one command without touching the filesystem.
CommandResult run_command(const RunConfig& cfg);

/// Execute the command named by cfg.command, write its CSVs and manifest
/// under cfg.out_dir, and map failures onto exit codes (partial outputs are
/// removed when a run fails).
int run(const RunConfig& cfg);

} // namespace vortexlab

#endif
