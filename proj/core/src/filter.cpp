#include "relnav/filter.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace relnav {

namespace {

struct StepData {
  ExtendedPose b0;
  Mat96 L;  // input-to-error map, expressed in the propagated state's frame
  ExtendedPose T_plus;
};

StepData make_step(const FilterState& x, const ImuSample& u0, const Rmi* rmi,
                   double dt) {
  StepData s;
  s.b0 = make_b(u0, x.bias_gyro, x.bias_accel_rel, dt);
  s.T_plus = s.b0.inverse() * x.T;
  if (rmi != nullptr) {
    s.T_plus = s.T_plus * rmi->delta;
  }
  if (s.T_plus.orthonormality_drift() > 1e-9) {
    s.T_plus.reorthonormalize();
  }
  // b0 multiplies on the left, so an input perturbation d reaches the
  // right-invariant error as Ad(T_plus^-1) L d. The same matrix must feed
  // the bias coupling and the white-noise injection, otherwise the windowed
  // and per-step covariance recursions stop agreeing.
  s.L = de23_adjoint(s.T_plus.inverse()) *
        linearize_b(u0, x.bias_gyro, x.bias_accel_rel, dt, BiasMode::kFull).L;
  return s;
}

Mat15 assemble_jacobian(const FilterState& x, const StepData& s,
                        const Rmi* rmi) {
  Mat15 A = Mat15::Identity();
  if (rmi != nullptr) {
    A.topLeftCorner<9, 9>() = de23_adjoint(rmi->delta.inverse());
  }
  if (x.options.estimate_biases) {
    A.block<9, 6>(0, 9) = s.L;
  }
  return A;
}

Mat15 assemble_noise(const FilterState& x, const StepData& s,
                     const NoiseParams& params, const Rmi* rmi, double dt) {
  Mat15 Q = build_process_noise(params, s.L, dt);
  if (!x.options.estimate_biases) {
    Q.bottomRightCorner<6, 6>().setZero();
  }
  if (rmi != nullptr) {
    Q.topLeftCorner<9, 9>() += rmi->cov;
  }
  return Q;
}

void symmetrize(Mat15& P) { P = 0.5 * (P + P.transpose()).eval(); }

}  // namespace

Mat15 process_jacobian(const FilterState& x, const ImuSample& u0,
                       const Rmi* rmi, double dt) {
  return assemble_jacobian(x, make_step(x, u0, rmi, dt), rmi);
}

FilterState predict_no_comm(const FilterState& x, const ImuSample& u0,
                            const NoiseParams& params, double dt) {
  const StepData s = make_step(x, u0, nullptr, dt);
  const Mat15 A = assemble_jacobian(x, s, nullptr);

  FilterState out = x;
  out.T = s.T_plus;
  out.P = A * x.P * A.transpose() + assemble_noise(x, s, params, nullptr, dt);
  symmetrize(out.P);
  return out;
}

FilterState update_on_rmi(const FilterState& x, const ImuSample& u0,
                          const Rmi& rmi, const NoiseParams& params,
                          double dt) {
  // x.T.c holds minus the time accumulated since the last increment; with
  // the current step the local window is (-x.T.c + dt) long.
  const double local_window = -x.T.c + dt;
  if (std::abs(local_window - rmi.duration) > 1e-9) {
    throw std::runtime_error(
        "update_on_rmi: increment duration does not match the accumulated "
        "communication-free window (desynchronized streams)");
  }
  const StepData s = make_step(x, u0, &rmi, dt);
  const Mat15 A = assemble_jacobian(x, s, &rmi);

  FilterState out = x;
  out.T = s.T_plus;
  out.T.c = 0.0;  // lands on SE2(3) exactly; the product leaves roundoff
  out.P = A * x.P * A.transpose() + assemble_noise(x, s, params, &rmi, dt);
  symmetrize(out.P);
  return out;
}

double predict_range(const FilterState& x, const Vec3& tag_0,
                     const Vec3& tag_i) {
  return (x.T.C * tag_i + x.T.r - tag_0).norm();
}

Eigen::Matrix<double, 1, 15> range_jacobian(const FilterState& x,
                                            const Vec3& tag_0,
                                            const Vec3& tag_i) {
  const Vec3 p = x.T.C * tag_i + x.T.r - tag_0;
  const Vec3 e = p / p.norm();
  Eigen::Matrix<double, 1, 15> H = Eigen::Matrix<double, 1, 15>::Zero();
  H.segment<3>(0) = -e.transpose() * x.T.C * skew(tag_i);
  H.segment<3>(6) = e.transpose() * x.T.C;
  return H;
}

RangeUpdateResult range_update(const FilterState& x,
                               const RangeMeasurement& z) {
  RangeUpdateResult out;
  out.state = x;

  const double rho_hat = predict_range(x, z.tag0, z.tagi);
  if (rho_hat < 1e-6) {
    return out;  // direction undefined; caller may warn
  }
  const Eigen::Matrix<double, 1, 15> H = range_jacobian(x, z.tag0, z.tagi);
  const double S = (H * x.P * H.transpose())(0, 0) + z.sigma * z.sigma;
  const double innov = z.range - rho_hat;
  out.nis = innov * innov / S;
  if (x.options.gate_ranges && out.nis > x.options.nis_gate) {
    return out;
  }

  const Vec15 K = x.P * H.transpose() / S;
  const Vec15 delta = K * innov;

  out.state.T = x.T * se23_exp(delta.head<9>());
  if (out.state.T.orthonormality_drift() > 1e-9) {
    out.state.T.reorthonormalize();
  }
  out.state.bias_gyro += delta.segment<3>(9);
  out.state.bias_accel_rel += delta.tail<3>();

  const Mat15 IKH = Mat15::Identity() - K * H;
  out.state.P = IKH * x.P * IKH.transpose() +
                K * (z.sigma * z.sigma) * K.transpose();
  symmetrize(out.state.P);
  out.applied = true;
  return out;
}

Vec15 error_state(const FilterState& x, const TruthState& truth) {
  Vec15 e;
  e.head<9>() = se23_log(x.T.with_c(0.0).inverse() * truth.T.with_c(0.0));
  e.segment<3>(9) = truth.bias_gyro - x.bias_gyro;
  e.tail<3>() = truth.bias_accel_rel - x.bias_accel_rel;
  return e;
}

double nees(const FilterState& x, const TruthState& truth) {
  const double bad = std::numeric_limits<double>::infinity();
  const Vec15 e = error_state(x, truth);

  const auto quad = [&bad](const auto& P, const auto& err) -> double {
    auto ldlt = P.ldlt();
    if (ldlt.info() != Eigen::Success) return bad;
    const auto d = ldlt.vectorD();
    if (!(d.minCoeff() > 0.0) || d.minCoeff() < 1e-12 * d.maxCoeff()) {
      return bad;
    }
    const double v = err.dot(ldlt.solve(err));
    return std::isfinite(v) && v >= 0.0 ? v : bad;
  };

  if (!x.options.estimate_biases) {
    return quad(Mat9(x.P.topLeftCorner<9, 9>()), Vec9(e.head<9>()));
  }
  return quad(x.P, e);
}

}  // namespace relnav
