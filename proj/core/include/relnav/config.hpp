#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "relnav/trajectory.hpp"
#include "relnav/types.hpp"

namespace relnav {

/// Filter initialization standard deviations.  The bias entries accept the
/// sentinel -1, meaning "match the distribution the true initial biases are
/// drawn from" (so the initial covariance is honest by construction).
struct InitParams {
  // Fine-alignment scale: the robots meet with coarse geometry already
  // known.  Larger values push the first-order filter outside its honest
  // linearization envelope and the error transient leaves a permanent
  // imprint on the covariance (measured as a late Monte Carlo NEES bulge).
  double sigma_att = 0.02;   // rad, per axis
  double sigma_vel = 0.02;   // m/s
  double sigma_pos = 0.05;   // m
  double sigma_bias_gyro = -1.0;
  double sigma_bias_accel = -1.0;
};

/// Initial-bias magnitudes for the with/without-bias-estimation comparison:
/// turn-on-scale constants drawn uniform in +-bias_gyro / +-bias_accel.
struct ComparisonParams {
  double bias_gyro = 0.02;  // rad/s
  double bias_accel = 0.2;  // m/s^2
};

struct LogParams {
  int decimate = 1;       // keep every Nth estimate/truth row
  bool truth = true;      // write truth CSVs
  bool estimates = true;  // write estimate CSVs
  bool events = false;    // write the replayable event log
};

struct ExperimentConfig {
  std::string mode = "simulate";  // simulate | replay
  std::uint64_t seed = 1;
  int trials = 1;
  std::string output_dir = "out";
  bool bias_estimation = true;
  bool compare_bias = false;
  /// Freeze the true biases at their initial draw (no random walk in truth);
  /// the filter still carries its nominal bias process noise.
  bool constant_biases = false;
  /// True initial biases are drawn uniform in +-scale * sigma_rw * sqrt(T).
  double initial_bias_scale = 5.0;
  /// Fraction of each trial excluded from consistency statistics.
  double nees_transient_fraction = 0.2;
  bool range_gate = true;
  TrajectoryParams trajectory;
  NoiseParams noise;
  InitParams init;
  ComparisonParams comparison;
  LogParams log;
  std::vector<Vec3> tags_0 = {Vec3(0.25, 0.0, 0.0), Vec3(-0.25, 0.0, 0.0)};
  std::vector<Vec3> tags_i = {Vec3(0.25, 0.0, 0.0), Vec3(-0.25, 0.0, 0.0)};
};

/// Schema violation with the JSON path it occurred at.
struct ConfigViolation {
  std::string where;
  std::string what;
};

/// Carries every violation found, not only the first.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string summary, std::vector<ConfigViolation> violations);
  const std::vector<ConfigViolation>& violations() const { return violations_; }

 private:
  std::vector<ConfigViolation> violations_;
};

ExperimentConfig default_config();

/// Parses and validates a JSON config file.  Omitted fields take defaults;
/// unknown keys are rejected.  `overrides` entries have the form
/// "dotted.key=value" and are applied before validation.  Throws ConfigError.
ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides = {});

/// Same, from JSON text; used by tests and by load_config.
ExperimentConfig config_from_json_text(
    const std::string& text, const std::vector<std::string>& overrides = {});

/// Full round-trippable JSON echo of a config, defaults included.
std::string resolved_config_json(const ExperimentConfig& config);

}  // namespace relnav
