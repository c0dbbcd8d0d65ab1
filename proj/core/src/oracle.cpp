#include "relnav/oracle.hpp"

#include <cmath>

#include "relnav/lie.hpp"

namespace relnav {

Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  Eigen::MatrixXd a = m;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    a /= std::pow(2.0, squarings);
  }
  Eigen::MatrixXd result =
      Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd term = result;
  for (int k = 1; k <= 30; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = (result * result).eval();
  return result;
}

Mat5 generator_rates(const Vec3& omega, const Vec3& accel) {
  Mat5 u = Mat5::Zero();
  u.block<3, 3>(0, 0) = skew(omega);
  u.block<3, 1>(0, 3) = accel;
  u(3, 4) = 1.0;
  return u;
}

Mat5 generator_bias(const Vec3& bias_gyro, const Vec3& bias_accel) {
  Mat5 b = Mat5::Zero();
  b.block<3, 3>(0, 0) = skew(bias_gyro);
  b.block<3, 1>(0, 3) = bias_accel;
  return b;
}

Mat5 sylvester_rk4_step(const Mat5& T, const Mat5& u0, const Mat5& ui,
                        double dt) {
  const auto flow = [&](const Mat5& state) -> Mat5 {
    return -u0 * state + state * ui;
  };
  const Mat5 k1 = flow(T);
  const Mat5 k2 = flow(T + 0.5 * dt * k1);
  const Mat5 k3 = flow(T + 0.5 * dt * k2);
  const Mat5 k4 = flow(T + dt * k3);
  return T + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::MatrixXd central_difference(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Eigen::VectorXd hi = x;
    Eigen::VectorXd lo = x;
    hi[j] += h;
    lo[j] -= h;
    jac.col(j) = (f(hi) - f(lo)) / (2.0 * h);
  }
  return jac;
}

}  // namespace relnav
