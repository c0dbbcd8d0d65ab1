#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relnav/config.hpp"
#include "relnav/filter.hpp"
#include "relnav/preintegration.hpp"
#include "relnav/rng.hpp"
#include "relnav/trajectory.hpp"

namespace relnav {

// Ground truth at one IMU sample instant. Absolute extended poses carry the
// elapsed time in their clock entry, so X0.inverse() * Xi is synchronized
// (clock 0) at every instant.
struct TruthRecord {
  double t = 0.0;
  ExtendedPose X0;
  ExtendedPose Xi;
  Vec3 bias_gyro_0 = Vec3::Zero();
  Vec3 bias_accel_0 = Vec3::Zero();
  Vec3 bias_gyro_i = Vec3::Zero();
  Vec3 bias_accel_i = Vec3::Zero();

  // Relative pose of robot i in robot 0's frame.
  ExtendedPose relative() const { return X0.inverse() * Xi; }
  // Relative accelerometer bias resolved in robot 0's body frame.
  Vec3 bias_accel_rel() const {
    return bias_accel_0 - relative().C * bias_accel_i;
  }
};

// Step counts derived from the configured rates. All rates must resolve to
// whole numbers of IMU steps.
struct Schedule {
  double dt = 0.0;
  int steps = 0;        // total IMU steps in the trial
  int steps_range = 0;  // IMU steps between ranging epochs
  int steps_rmi = 0;    // IMU steps per communication window
};

// Throws ConfigError when a rate does not divide the IMU rate.
Schedule make_schedule(const ExperimentConfig& config);

// Everything one trial consumes, synthesized once per seed so every filter
// variant sees byte-identical inputs.
struct TrialData {
  Schedule sched;
  TrajectoryParams traj;  // post-jitter
  std::vector<TruthRecord> truth;  // size steps + 1, indexed by step
  std::vector<ImuSample> imu0;     // sample j drives step j -> j + 1
  std::vector<ImuSample> imui;
  // Neighbour's own gyro-bias estimate, one per communication window.
  std::vector<Vec3> neighbour_bias_estimates;
  // Range measurements grouped by ranging epoch; epoch e fires at step
  // (e + 1) * sched.steps_range.
  std::vector<std::vector<RangeMeasurement>> ranges;

  // Non-empty only when truth is sparse (replayed logs): truth_valid[s] says
  // whether truth[s] holds real data.  Empty means all records are valid.
  std::vector<char> truth_valid;

  // Shared initial estimate draw.
  ExtendedPose T0_est;
  Vec3 bias_gyro0_est = Vec3::Zero();
  Vec3 bias_accel_rel0_est = Vec3::Zero();
  Mat15 P0 = Mat15::Identity();

  bool has_truth(int s) const {
    return truth_valid.empty() || truth_valid[static_cast<std::size_t>(s)];
  }
};

TrialData make_trial_data(const ExperimentConfig& config, std::uint64_t seed);

// Initial covariance from the configured sigmas.  Auto-sized bias sigmas
// (sentinel -1) derive from the bias draw amplitudes, floored at 1e-12 so
// zero-noise configs keep an invertible matrix.
Mat15 initial_covariance(const ExperimentConfig& config);

// Per-window RMIs as the neighbour would broadcast them. Independent of the
// receiving filter's state, so both comparison variants consume the same
// objects.
std::vector<Rmi> build_rmis(const TrialData& data, const NoiseParams& noise);

struct EstimateRow {
  double t = 0.0;
  ExtendedPose T;
  Vec3 bias_gyro = Vec3::Zero();
  Vec3 bias_accel_rel = Vec3::Zero();
  Vec15 p_diag = Vec15::Zero();
  double nees_value = 0.0;
};

struct NeesSample {
  double t = 0.0;
  double value = 0.0;
};

struct FilterRun {
  std::vector<EstimateRow> rows;        // decimated per config
  std::vector<NeesSample> nees_epochs;  // synchronized post-update states
  double rmse_pos = 0.0;                // over all window-close epochs
  int ranges_applied = 0;
  int ranges_gated = 0;
  int ranges_skipped = 0;
  bool diverged = false;  // any epoch NEES non-finite or > 1e4
};

FilterRun run_filter(const ExperimentConfig& config, const TrialData& data,
                     const std::vector<Rmi>& rmis, bool estimate_biases);

struct TrialResult {
  TrialData data;
  FilterRun primary;
  std::optional<FilterRun> baseline;  // bias estimation off, for comparisons
};

TrialResult run_trial(const ExperimentConfig& config, int trial_index);

}  // namespace relnav
