#include "relnav/preintegration.hpp"

#include <cmath>
#include <stdexcept>

namespace relnav {

Rmi Rmi::Begin(std::int64_t index) {
  Rmi out;
  out.start_index = index;
  out.end_index = index;
  return out;
}

Rmi rmi_append(const Rmi& rmi, const ImuSample& u, const Vec3& bias_gyro_est,
               const Mat3& bias_gyro_cov, const NoiseParams& imu_noise,
               double dt, const Vec3& bias_accel_est) {
  // Accelerometer bias is never corrected here; see header.
  (void)bias_accel_est;
  const ExtendedPose b = make_b(u, bias_gyro_est, Vec3::Zero(), dt);
  const ProcessJacobians jac =
      linearize_b(u, bias_gyro_est, Vec3::Zero(), dt, BiasMode::kGyroOnly);

  Vec6 w;
  w << Vec3::Constant(imu_noise.sigma_gyro * imu_noise.sigma_gyro),
      Vec3::Constant(imu_noise.sigma_accel * imu_noise.sigma_accel);

  const Mat9 ad_inv = de23_adjoint(b.inverse());
  const Eigen::Matrix<double, 9, 3> le = jac.L * gyro_bias_selector();

  Rmi out = rmi;
  out.delta = rmi.delta * b;
  if (out.delta.orthonormality_drift() > 1e-9) {
    out.delta.reorthonormalize();
  }
  out.cov = ad_inv * rmi.cov * ad_inv.transpose() +
            jac.L * w.asDiagonal() * jac.L.transpose() +
            le * bias_gyro_cov * le.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  out.duration += dt;
  out.end_index += 1;
  return out;
}

ExtendedPose rmi_apply(const ExtendedPose& T_l, const ExtendedPose& b0_product,
                       const Rmi& rmi) {
  if (std::abs(b0_product.c - rmi.duration) > 1e-9) {
    throw std::runtime_error(
        "rmi_apply: local increment spans a different window than the "
        "received increment (desynchronized streams)");
  }
  return b0_product.inverse() * T_l * rmi.delta;
}

}  // namespace relnav
