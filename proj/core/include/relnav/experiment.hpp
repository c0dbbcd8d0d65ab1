#pragma once

#include <iosfwd>
#include <string>

#include "relnav/config.hpp"

namespace relnav {

// Runs the configured Monte Carlo experiment and writes all artifacts under
// config.output_dir: resolved_config.json, per-trial estimate/truth CSVs
// (plus the bias-estimation-off variant in comparison mode), nees.csv with
// an across-trial average, and summary.json.  Returns 0 on success, 2 when
// at least one trial diverged (artifacts are still written), 3 on an I/O
// failure.  Progress notes go to `out`.
int run_experiment(const ExperimentConfig& config, std::ostream& out);

// Re-runs the estimator on a recorded event log.  The neighbour's logged
// stream is treated as its broadcast (gyro already bias-corrected); the
// filter initializes from the t = 0 truth row when present.  Same exit-code
// contract as run_experiment.
int run_replay(const ExperimentConfig& config, const std::string& log_path,
               std::ostream& out);

}  // namespace relnav
