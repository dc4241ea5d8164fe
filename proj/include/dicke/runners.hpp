#pragma once

#include <filesystem>
#include <vector>

#include "dicke/run_config.hpp"

namespace dicke {

// Files written by a run plus the process exit code: 0 on success, 3 when
// some cells/curves hit a numeric failure (the failures are flagged inside
// the CSVs.)  Config errors never reach this layer; validate() throws and
// the CLI maps that to exit 2.
struct RunOutcome {
  int exit_code = 0;
  std::vector<std::filesystem::path> outputs;
};

RunOutcome run_sectors(const RunConfig& config);
RunOutcome run_sweep(const RunConfig& config);
RunOutcome run_evolve(const RunConfig& config);
RunOutcome run_leakage(const RunConfig& config);
RunOutcome run_balance(const RunConfig& config);

// Validates and dispatches on config.command, writing a manifest next to
// the data files.
RunOutcome run(const RunConfig& config);

// Worker-pool width: the OpenMP thread count, optionally capped by the
// DICKE_BATTERY_THREADS environment variable.
int worker_pool_size();

}  // namespace dicke
