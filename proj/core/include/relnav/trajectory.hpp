#pragma once

#include <string>

#include "relnav/lie.hpp"
#include "relnav/rng.hpp"

namespace relnav {

/// Analytic path of one robot.  Circular paths use center/radius/period/
/// phase; lissajous paths use the per-axis amplitude/period/phase triples;
/// static paths sit at center.
struct PathSpec {
  Vec3 center = Vec3::Zero();
  double radius = 2.0;
  double period = 10.0;
  double phase = 0.0;
  Vec3 lissajous_amplitude = Vec3(1.5, 1.0, 0.5);
  Vec3 lissajous_period = Vec3(8.0, 5.0, 7.0);
  Vec3 lissajous_phase = Vec3(0.0, 1.0, 2.0);
};

/// Sinusoidal roll/pitch/yaw wobble: per-axis amplitudes (rad), periods (s),
/// and phases.  Robot 0 flies the base wobble; robot i follows the same base
/// composed with a constant offset plus a slow low-amplitude relative wobble
/// on top.  The relative wobble must keep moving (a frozen relative attitude
/// leaves rotation about the tag line unexcited and the filter accumulates
/// spurious confidence there), but its rate has to stay small: the relative
/// accelerometer bias state ignores the rotation of the neighbour's bias
/// vector, a model error that grows with |omega_rel| times the bias size.
struct AttitudeSpec {
  Vec3 amplitude = Vec3(0.25, 0.2, 0.35);
  Vec3 period = Vec3(7.0, 5.0, 6.0);
  Vec3 phase = Vec3(0.0, 0.4, 0.9);
};

struct TrajectoryParams {
  std::string kind = "circular";  // circular | lissajous | static
  double duration = 60.0;
  bool seed_jitter = true;
  Vec3 relative_attitude = Vec3(0.3, -0.2, 0.5);  // axis-angle offset
  PathSpec robot0;
  PathSpec roboti = [] {
    PathSpec p;
    p.center = Vec3(0.8, -0.5, 0.35);
    p.radius = 1.5;
    p.period = 9.0;
    p.phase = 1.1;
    p.lissajous_amplitude = Vec3(1.2, 1.4, 0.6);
    p.lissajous_period = Vec3(7.0, 6.0, 5.0);
    p.lissajous_phase = Vec3(0.7, 1.9, 0.3);
    return p;
  }();
  AttitudeSpec attitude0;
  // Relative deviation wobble (robot i relative to robot 0's frame).  Long
  // periods and small amplitudes keep the peak relative rate near 0.03
  // rad/s: enough to sweep the weakly observed rotation direction through
  // the state space over a trial, small enough that the neglected rotation
  // drift of the relative bias stays inside its noise envelope for
  // walk-scale bias magnitudes.
  AttitudeSpec relative_wobble = [] {
    AttitudeSpec a;
    a.amplitude = Vec3(0.06, 0.05, 0.07);
    a.period = Vec3(17.0, 23.0, 29.0);
    a.phase = Vec3(0.7, 1.3, 0.2);
    return a;
  }();
};

/// Exact kinematic state of one robot on its analytic path.
struct RobotKinematics {
  Mat3 C = Mat3::Identity();  // body-to-world attitude
  Vec3 v = Vec3::Zero();      // world-frame velocity
  Vec3 r = Vec3::Zero();      // world-frame position
  Vec3 omega = Vec3::Zero();  // body-frame angular rate, Cdot = C omega^
  Vec3 accel = Vec3::Zero();  // body-frame acceleration, C^T rddot
};

/// robot: 0 for the local robot, 1 for the neighbour.
RobotKinematics analytic_state(const TrajectoryParams& traj, int robot,
                               double t);

/// Randomizes phases and the neighbour's center so Monte Carlo trials see
/// different geometry; deterministic in the generator state.  Static paths
/// are returned unchanged.
TrajectoryParams jitter_trajectory(const TrajectoryParams& base, Rng& rng);

}  // namespace relnav
