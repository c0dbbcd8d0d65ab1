#include "relnav/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace relnav {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct PathPoint {
  Vec3 r = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Vec3 a = Vec3::Zero();
};

PathPoint eval_path(const std::string& kind, const PathSpec& p, double t) {
  PathPoint out;
  if (kind == "static") {
    out.r = p.center;
    return out;
  }
  if (kind == "circular") {
    const double w = kTwoPi / p.period;
    const double s = std::sin(w * t + p.phase);
    const double c = std::cos(w * t + p.phase);
    out.r = p.center + p.radius * Vec3(c, s, 0.0);
    out.v = p.radius * w * Vec3(-s, c, 0.0);
    out.a = -p.radius * w * w * Vec3(c, s, 0.0);
    return out;
  }
  if (kind == "lissajous") {
    for (int k = 0; k < 3; ++k) {
      const double w = kTwoPi / p.lissajous_period[k];
      const double arg = w * t + p.lissajous_phase[k];
      out.r[k] = p.center[k] + p.lissajous_amplitude[k] * std::sin(arg);
      out.v[k] = p.lissajous_amplitude[k] * w * std::cos(arg);
      out.a[k] = -p.lissajous_amplitude[k] * w * w * std::sin(arg);
    }
    return out;
  }
  throw std::invalid_argument("unknown trajectory kind: " + kind);
}

struct AttitudePoint {
  Mat3 C = Mat3::Identity();
  Vec3 omega = Vec3::Zero();
};

// Roll/pitch/yaw about body x/y/z; C = Rz(yaw) Ry(pitch) Rx(roll).  Body
// rates follow the Z-Y-X Euler kinematics.
AttitudePoint eval_attitude(const AttitudeSpec& att, double t) {
  double ang[3];
  double rate[3];
  for (int k = 0; k < 3; ++k) {
    const double w = kTwoPi / att.period[k];
    ang[k] = att.amplitude[k] * std::sin(w * t + att.phase[k]);
    rate[k] = att.amplitude[k] * w * std::cos(w * t + att.phase[k]);
  }
  const double roll = ang[0], pitch = ang[1], yaw = ang[2];
  const double droll = rate[0], dpitch = rate[1], dyaw = rate[2];

  AttitudePoint out;
  out.C = (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
           Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
           Eigen::AngleAxisd(roll, Vec3::UnitX()))
              .toRotationMatrix();
  const double sr = std::sin(roll), cr = std::cos(roll);
  const double sp = std::sin(pitch), cp = std::cos(pitch);
  out.omega = Vec3(droll - dyaw * sp, dpitch * cr + dyaw * cp * sr,
                   -dpitch * sr + dyaw * cp * cr);
  return out;
}

}  // namespace

RobotKinematics analytic_state(const TrajectoryParams& traj, int robot,
                               double t) {
  const PathSpec& path = robot == 0 ? traj.robot0 : traj.roboti;
  const PathPoint p = eval_path(traj.kind, path, t);

  AttitudePoint att;
  if (traj.kind != "static") {
    att = eval_attitude(traj.attitude0, t);
  }

  RobotKinematics out;
  out.v = p.v;
  out.r = p.r;
  if (robot == 0) {
    out.C = att.C;
    out.omega = att.omega;
  } else {
    // C_i = C_0 * offset * dev(t): the constant offset sets the mean
    // separation and dev is the relative deviation wobble, so the true
    // relative attitude is offset * dev(t) and its body rate is exactly
    // dev's rate.
    const Mat3 offset = so3_exp(traj.relative_attitude);
    AttitudePoint dev;
    if (traj.kind != "static") {
      dev = eval_attitude(traj.relative_wobble, t);
    }
    out.C = att.C * offset * dev.C;
    // body rate of A*K*D is (K*D)^T omega_A + omega_D
    out.omega = (offset * dev.C).transpose() * att.omega + dev.omega;
  }
  out.accel = out.C.transpose() * p.a;
  return out;
}

TrajectoryParams jitter_trajectory(const TrajectoryParams& base, Rng& rng) {
  if (base.kind == "static") return base;
  TrajectoryParams out = base;
  out.robot0.phase += rng.uniform(-M_PI, M_PI);
  for (int k = 0; k < 3; ++k) {
    out.robot0.lissajous_phase[k] += rng.uniform(-M_PI, M_PI);
  }
  out.roboti.phase += rng.uniform(-M_PI, M_PI);
  for (int k = 0; k < 3; ++k) {
    out.roboti.lissajous_phase[k] += rng.uniform(-M_PI, M_PI);
  }
  for (int k = 0; k < 3; ++k) {
    out.attitude0.phase[k] += rng.uniform(-M_PI, M_PI);
  }
  for (int k = 0; k < 3; ++k) {
    out.relative_wobble.phase[k] += rng.uniform(-M_PI, M_PI);
  }
  out.roboti.center += rng.uniform_vec3(0.3);
  return out;
}

}  // namespace relnav
