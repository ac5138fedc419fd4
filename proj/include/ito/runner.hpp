#pragma once

#include <string>
#include <vector>

#include "ito/config.hpp"
#include "ito/verification.hpp"

namespace ito {

struct RunOutcome {
  int status = 0;  // 0 all checks passed, 1 at least one failed
  std::vector<CheckResult> results;
};

// Executes the selected checks against the configured integrand and
// writes per-check diagnostics CSVs, summary.csv and manifest.json into
// the config's output directory. Validates before touching the
// filesystem, so a bad config produces no files (UsageError propagates;
// the CLI maps it to exit status 2).
RunOutcome run_experiment(const ExperimentConfig& config);

// Human-readable catalog of the built-in integrands with their h2 /
// continuity flags.
std::string list_integrands_text();

// Writes one `t,w` CSV per path index into the output directory, sampled
// on the dyadic grid at the config's finest level.
void dump_paths(const ExperimentConfig& config);

}  // namespace ito
