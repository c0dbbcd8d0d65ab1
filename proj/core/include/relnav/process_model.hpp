#pragma once

#include "relnav/extended_pose.hpp"
#include "relnav/types.hpp"

namespace relnav {

/// Which bias components the one-step propagator corrects.  The local robot
/// corrects gyro and (relative) accelerometer bias; a neighbour's increment
/// corrects only its gyro bias, its accelerometer bias being absorbed into
/// the relative accelerometer bias state on the receiving side.
enum class BiasMode { kFull, kGyroOnly };

/// Selector E = [I3; 0] mapping a gyro-bias perturbation into the 6-dim
/// input perturbation.
Eigen::Matrix<double, 6, 3> gyro_bias_selector();

/// One-step propagator
///
///   B = [ Exp(Om)  dt J_l(Om)(a - b_a)  (dt^2/2) N(Om)(a - b_a) ]
///       [                    1          dt                      ]
///       [                               1                       ]
///
/// with Om = (w - b_g) dt.  Equals M(dt) * exp(hat(V (u - b))) and the
/// matrix exponential of the bias-corrected generator times dt.
ExtendedPose make_b(const Vec3& gyro, const Vec3& accel, const Vec3& bias_gyro,
                    const Vec3& bias_accel, double dt);

/// First-order expansion of make_b around anchor inputs and biases:
/// B(u + du, b + db) = B(u, b) * Exp(L (du - db)) + O(|du|^2).
struct ProcessJacobians {
  Mat96 L = Mat96::Zero();   // exact input-to-perturbation map
  Mat96 V = Mat96::Zero();   // block map from (w - b_g, a - b_a) to the
                             // exponent of B; L's leading factor
  Vec9 xi = Vec9::Zero();    // exponent of B at the anchor
  Vec6 u_anchor = Vec6::Zero();     // (gyro; accel) the expansion is taken at
  Vec6 beta_anchor = Vec6::Zero();  // (gyro bias; accel bias) ditto
  BiasMode mode = BiasMode::kFull;

  /// Columns of L acted on by a bias perturbation: all six in kFull mode,
  /// L * E (gyro columns) in kGyroOnly mode.
  Mat96 bias_block() const;
};

ProcessJacobians linearize_b(const Vec3& gyro, const Vec3& accel,
                             const Vec3& bias_gyro, const Vec3& bias_accel,
                             double dt, BiasMode mode);

inline ExtendedPose make_b(const ImuSample& u, const Vec3& bias_gyro,
                           const Vec3& bias_accel, double dt) {
  return make_b(u.gyro, u.accel, bias_gyro, bias_accel, dt);
}

inline ProcessJacobians linearize_b(const ImuSample& u, const Vec3& bias_gyro,
                                    const Vec3& bias_accel, double dt,
                                    BiasMode mode) {
  return linearize_b(u.gyro, u.accel, bias_gyro, bias_accel, dt, mode);
}

/// Process noise for the 15-dim error state [pose (9); gyro bias (3);
/// relative accel bias (3)] over one step of length dt.
///
/// Pose rows: L diag(sg^2 I, sa^2 I) L^T from the local IMU's white noise.
/// Gyro-bias rows: dt^2 sgrw^2 I.  Relative-accel-bias rows: both robots'
/// random-walk drivers enter, the neighbour's through an orthogonal rotation,
/// so the block is 2 dt^2 sarw^2 I.  No cross blocks: the white measurement
/// noises and the random-walk drivers are independent processes.
Mat15 build_process_noise(const NoiseParams& params, const Mat96& L,
                          double dt);

/// Discrete relative-pose step T_{k+1} = B_0^-1 T_k B_i.
ExtendedPose propagate_pose(const ExtendedPose& T, const ExtendedPose& b0,
                            const ExtendedPose& bi);

/// Gyro-bias random walk beta_{k+1} = beta_k + dt * w.
Vec3 propagate_gyro_bias(const Vec3& beta, const Vec3& w, double dt);

/// Relative accelerometer bias of robot i as seen by robot 0:
/// beta0 - C * betai, with C the current relative attitude.
Vec3 rel_accel_bias(const Vec3& beta0_acc, const Vec3& betai_acc,
                    const Mat3& C);

/// O(dt) relative-accelerometer-bias step: the deterministic part is held
/// constant and both robots' random-walk drivers enter, the neighbour's
/// rotated by the updated relative attitude.
Vec3 propagate_rel_accel_bias(const Vec3& beta, const ExtendedPose& T,
                              const ExtendedPose& b0, const ExtendedPose& bi,
                              const Vec3& w0, const Vec3& wi, double dt);

/// Exact relative-accelerometer-bias step from the per-robot biases; the
/// deterministic part rotates with the updated relative attitude.  Reference
/// for the O(dt) step above.
Vec3 propagate_rel_accel_bias_exact(const Vec3& beta0_acc,
                                    const Vec3& betai_acc,
                                    const ExtendedPose& T,
                                    const ExtendedPose& b0,
                                    const ExtendedPose& bi, const Vec3& w0,
                                    const Vec3& wi, double dt);

}  // namespace relnav
