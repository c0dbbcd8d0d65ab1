#pragma once

#include <functional>

#include "relnav/extended_pose.hpp"

namespace relnav {

// Independent reference implementations used to cross-check the closed
// forms.  Deliberately naive: correctness by construction over speed.

// Scaling-and-squaring Taylor matrix exponential; accurate to near machine
// precision for the moderate norms that arise here.
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

// Continuous-time generator of the extended-pose kinematics driven by body
// rates: Xdot = X * generator_rates(omega, accel).  Includes the clock
// entry.
Mat5 generator_rates(const Vec3& omega, const Vec3& accel);

// Bias contribution subtracted from the rate generator; carries no clock
// entry.
Mat5 generator_bias(const Vec3& bias_gyro, const Vec3& bias_accel);

// One RK4 step of the relative-pose flow Tdot = -U0 T + T Ui with both
// generators held constant over the step.
Mat5 sylvester_rk4_step(const Mat5& T, const Mat5& u0, const Mat5& ui,
                        double dt);

// Central-difference Jacobian of f at x with step h per component.
Eigen::MatrixXd central_difference(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h);

}  // namespace relnav
