#pragma once

#include "relnav/lie.hpp"

#include <cstdint>

namespace relnav {

using Mat15 = Eigen::Matrix<double, 15, 15>;
using Vec15 = Eigen::Matrix<double, 15, 1>;

struct ImuSample {
  double t = 0.0;
  Vec3 gyro = Vec3::Zero();    // rad/s
  Vec3 accel = Vec3::Zero();   // m/s^2
};

/// White-noise and random-walk strengths plus the timing of the simulated
/// sensor stack.  White sigmas are per-sample standard deviations at
/// imu_rate; random-walk sigmas follow beta_{k+1} = beta_k + dt * w with
/// w ~ N(0, sigma_rw^2 I).
struct NoiseParams {
  double sigma_gyro = 1e-3;             // rad/s per sample
  double sigma_accel = 1e-2;            // m/s^2 per sample
  double sigma_gyro_rw = 2.5e-5;        // rad/s
  double sigma_accel_rw = 1.58e-3;      // m/s^2
  double sigma_range = 0.1;             // m
  double sigma_neighbour_bias = 2.5e-5; // rad/s, corruption of the neighbour's
                                        // gyro-bias estimate
  double imu_rate = 100.0;              // Hz
  double range_rate = 10.0;             // Hz
  double rmi_period = 1.0;              // s, maximum preintegration window
};

struct RangeMeasurement {
  double t = 0.0;
  double range = 0.0;          // m
  Vec3 tag0 = Vec3::Zero();    // body-frame lever arm on robot 0
  Vec3 tagi = Vec3::Zero();    // body-frame lever arm on robot i
  double sigma = 0.1;          // m
};

}  // namespace relnav
