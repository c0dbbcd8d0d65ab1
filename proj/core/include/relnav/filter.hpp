#pragma once

#include "relnav/preintegration.hpp"

namespace relnav {

struct FilterOptions {
  /// When false the bias states stay frozen at zero: no bias-to-pose
  /// coupling, no bias process noise, and measurement updates cannot touch
  /// them.  Used for the with/without-bias-estimation comparison.
  bool estimate_biases = true;
  bool gate_ranges = true;
  /// 99.7% quantile of a 1-dof chi-square; range innovations whose
  /// normalized square exceeds it are dropped.
  double nis_gate = 8.807468393511947;
};

/// Error-state filter over the relative pose and the local robot's biases.
/// Pose errors use the right-perturbation convention T = T_hat * Exp(dxi);
/// the error state is ordered [dxi (9); d bias_gyro (3); d bias_accel_rel
/// (3)].  Between communications T.c drifts away from zero by the elapsed
/// time, recording that the neighbour's side of the relative pose is frozen
/// at the last received increment; absorbing an increment returns T to the
/// c = 0 subgroup.
struct FilterState {
  ExtendedPose T = ExtendedPose::Identity();
  Vec3 bias_gyro = Vec3::Zero();
  Vec3 bias_accel_rel = Vec3::Zero();
  Mat15 P = Mat15::Zero();
  FilterOptions options;
};

/// Reference values an estimate is scored against.
struct TruthState {
  ExtendedPose T = ExtendedPose::Identity();
  Vec3 bias_gyro = Vec3::Zero();
  Vec3 bias_accel_rel = Vec3::Zero();
};

/// Error-state transition of one propagation step.  Pass rmi = nullptr for a
/// communication-free step.  Exposed so tests can compare it against finite
/// differences of the corresponding nonlinear mean map.
Mat15 process_jacobian(const FilterState& x, const ImuSample& u0,
                       const Rmi* rmi, double dt);

/// Propagation with local IMU only: T <- B0^-1 T with B0 built from u0
/// corrected by the current bias estimates; biases unchanged in mean;
/// P <- A P A^T + Q.
FilterState predict_no_comm(const FilterState& x, const ImuSample& u0,
                            const NoiseParams& params, double dt);

/// Propagation absorbing a received increment: T <- B0^-1 T rmi.delta, which
/// lands on c = 0; the increment's covariance enters the pose block directly
/// (its right perturbation is already expressed at the updated state).
/// Throws when the increment's duration disagrees with the time accumulated
/// in T.c plus the current step.
FilterState update_on_rmi(const FilterState& x, const ImuSample& u0,
                          const Rmi& rmi, const NoiseParams& params,
                          double dt);

double predict_range(const FilterState& x, const Vec3& tag_0,
                     const Vec3& tag_i);

Eigen::Matrix<double, 1, 15> range_jacobian(const FilterState& x,
                                            const Vec3& tag_0,
                                            const Vec3& tag_i);

struct RangeUpdateResult {
  FilterState state;
  /// False when the innovation was gated or the predicted range was too
  /// small to define a direction; the state is then unchanged.
  bool applied = false;
  double nis = 0.0;
};

/// Joseph-form scalar update with the range model
/// rho = |C tag_i + r - tag_0| + noise.
RangeUpdateResult range_update(const FilterState& x, const RangeMeasurement& z);

/// Right error [se23_log of the pose error; bias deltas], with the c entries
/// of both poses zeroed before the log.
Vec15 error_state(const FilterState& x, const TruthState& truth);

/// e^T P^-1 e over the active error state: all 15 components normally, the
/// 9 pose components when bias estimation is off (the bias blocks of P are
/// then identically zero).  Returns +inf for a P that is singular or not
/// positive, which harnesses treat as divergence.
double nees(const FilterState& x, const TruthState& truth);

}  // namespace relnav
