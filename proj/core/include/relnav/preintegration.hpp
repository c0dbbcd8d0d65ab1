#pragma once

#include <cstdint>

#include "relnav/process_model.hpp"

namespace relnav {

/// Preintegrated motion increment over a window of IMU samples: the running
/// product of one-step propagators, gyro-corrected with the owning robot's
/// bias estimate, accelerometer left uncorrected.  delta.c carries the window
/// duration; the receiver uses it to check stream synchronization.
struct Rmi {
  ExtendedPose delta = ExtendedPose::Identity();
  Mat9 cov = Mat9::Zero();  // right-perturbation covariance of delta
  double duration = 0.0;
  std::int64_t start_index = 0;
  std::int64_t end_index = 0;

  /// Identity increment anchored at a stream index.
  static Rmi Begin(std::int64_t index);
};

/// Appends one sample:
///
///   delta <- delta * B(u, bias_gyro_est, 0, dt)
///   cov   <- Ad(B^-1) cov Ad(B^-1)^T + L Q_u L^T + (L E) bias_gyro_cov (L E)^T
///
/// Q_u is the white-noise covariance diag(sigma_gyro^2 I, sigma_accel^2 I)
/// of one sample; the last term accounts for the uncertainty of the gyro-bias
/// estimate used for correction.  `bias_accel_est` is accepted for interface
/// symmetry and deliberately never applied: accelerometer samples are
/// preintegrated uncorrected, their bias belongs to the receiver's relative
/// accelerometer bias state.
Rmi rmi_append(const Rmi& rmi, const ImuSample& u, const Vec3& bias_gyro_est,
               const Mat3& bias_gyro_cov, const NoiseParams& imu_noise,
               double dt, const Vec3& bias_accel_est = Vec3::Zero());

/// Window application T_m = b0_product^-1 * T_l * rmi.delta, where b0_product
/// is the local robot's increment over the same window.  The clock entry of
/// b0_product must match the RMI duration to 1e-9 s; a mismatch means the two
/// robots preintegrated different windows.
ExtendedPose rmi_apply(const ExtendedPose& T_l, const ExtendedPose& b0_product,
                       const Rmi& rmi);

}  // namespace relnav
