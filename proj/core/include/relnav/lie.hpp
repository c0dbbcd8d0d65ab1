#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace relnav {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat96 = Eigen::Matrix<double, 9, 6>;

/// Angle below which rotation closed forms switch to their series expansion.
inline constexpr double kSmallAngle = 1e-6;

/// Wider series branch for coefficient functions whose closed forms suffer
/// subtractive cancellation (see jl_inv_coeff and the Q-matrix coefficients).
inline constexpr double kSeriesAngle = 0.1;

/// 3x3 skew-symmetric (cross-product) matrix of p.
inline Mat3 skew(const Vec3& p) {
  Mat3 S;
  S << 0.0, -p.z(), p.y(), p.z(), 0.0, -p.x(), -p.y(), p.x(), 0.0;
  return S;
}

/// Inverse of skew: extracts p from a skew-symmetric matrix.
inline Vec3 unskew(const Mat3& S) { return Vec3(S(2, 1), S(0, 2), S(1, 0)); }

/// Rotation matrix exp(phi^) by the Rodrigues formula.
/// Series branch below kSmallAngle keeps terms through phi^4.
inline Mat3 so3_exp(const Vec3& phi) {
  const double th = phi.norm();
  const Mat3 S = skew(phi);
  if (th < kSmallAngle) {
    const Mat3 S2 = S * S;
    return Mat3::Identity() + S + S2 / 2.0 + S2 * S / 6.0 + S2 * S2 / 24.0;
  }
  const double sh = std::sin(0.5 * th);
  // 1 - cos(th) = 2 sin^2(th/2), cancellation-free
  return Mat3::Identity() + (std::sin(th) / th) * S +
         (2.0 * sh * sh / (th * th)) * (S * S);
}

/// Left Jacobian of SO(3): J_l(phi) = sum phi^^n / (n+1)!.
inline Mat3 so3_left_jacobian(const Vec3& phi) {
  const double th = phi.norm();
  const Mat3 S = skew(phi);
  if (th < kSmallAngle) {
    const Mat3 S2 = S * S;
    return Mat3::Identity() + S / 2.0 + S2 / 6.0 + S2 * S / 24.0 +
           S2 * S2 / 120.0;
  }
  const double th2 = th * th;
  const double sh = std::sin(0.5 * th);
  return Mat3::Identity() + (2.0 * sh * sh / th2) * S +
         ((th - std::sin(th)) / (th2 * th)) * (S * S);
}

/// Quadratic coefficient of the inverse left Jacobian:
/// J_l(phi)^-1 = I - phi^/2 + jl_inv_coeff(th) * phi^ phi^.
/// The closed form 1/th^2 - cot(th/2)/(2 th) cancels catastrophically for
/// small th, so the Bernoulli series is used below kSeriesAngle.
inline double jl_inv_coeff(double th) {
  if (th < kSeriesAngle) {
    const double t2 = th * th;
    return 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0 +
           t2 * t2 * t2 / 1209600.0;
  }
  return 1.0 / (th * th) - 1.0 / (2.0 * th * std::tan(0.5 * th));
}

/// Derivative of jl_inv_coeff with respect to th.
inline double jl_inv_coeff_deriv(double th) {
  if (th < kSeriesAngle) {
    const double t2 = th * th;
    return th / 360.0 + t2 * th / 7560.0 + t2 * t2 * th / 201600.0;
  }
  const double t2 = th * th;
  const double sh = std::sin(0.5 * th);
  const double ta = std::tan(0.5 * th);
  return -2.0 / (t2 * th) + 1.0 / (4.0 * th * sh * sh) + 1.0 / (2.0 * t2 * ta);
}

/// Inverse left Jacobian of SO(3).
inline Mat3 so3_left_jacobian_inv(const Vec3& phi) {
  const double th = phi.norm();
  const Mat3 S = skew(phi);
  return Mat3::Identity() - 0.5 * S + jl_inv_coeff(th) * (S * S);
}

/// Rotation vector of C, principal branch (|phi| <= pi).
/// Within 1e-7 of pi the axis comes from the +1 eigenvector of C, taken from
/// the dominant column of (C + I)/2; the sign is fixed against unskew(C - C^T)
/// when that still carries signal.
inline Vec3 so3_log(const Mat3& C) {
  const Vec3 w = unskew(C - C.transpose()) * 0.5;  // = sin(th) * axis
  const double cth = std::min(1.0, std::max(-1.0, (C.trace() - 1.0) * 0.5));
  const double sth = w.norm();
  const double th = std::atan2(sth, cth);
  if (th < kSmallAngle) {
    return w * (1.0 + th * th / 6.0);
  }
  if (th > M_PI - 1e-7) {
    const Mat3 B = 0.5 * (C + Mat3::Identity());
    int k = 0;
    B.diagonal().maxCoeff(&k);
    Vec3 axis = B.col(k);
    const double n = axis.norm();
    if (n < 1e-12) {
      throw std::invalid_argument("so3_log: degenerate rotation near pi");
    }
    axis /= n;
    if (axis.dot(w) < 0.0) axis = -axis;
    return th * axis;
  }
  return (th / sth) * w;
}

/// N(phi) = 2 * sum phi^^n / (n+2)!; the position block of the one-step
/// propagator is (dt^2/2) * N(omega dt) * a.  N(0) = I.
inline Mat3 n_matrix(const Vec3& phi) {
  const double th = phi.norm();
  const Mat3 S = skew(phi);
  if (th < kSmallAngle) {
    const Mat3 S2 = S * S;
    return Mat3::Identity() + S / 3.0 + S2 / 12.0 + S2 * S / 60.0 +
           S2 * S2 / 360.0;
  }
  const double th2 = th * th;
  const double sh = std::sin(0.5 * th);
  const double a1 = 2.0 * (th - std::sin(th)) / (th2 * th);
  // 2(cos th - 1 + th^2/2)/th^4 = (th^2 - 4 sin^2(th/2))/th^4
  const double a2 = (th2 - 4.0 * sh * sh) / (th2 * th2);
  return Mat3::Identity() + a1 * S + a2 * (S * S);
}

/// hat of a 9-vector (phi, nu, rho) into the 5x5 algebra matrix.
inline Mat5 se23_hat(const Vec9& xi) {
  Mat5 H = Mat5::Zero();
  H.block<3, 3>(0, 0) = skew(xi.head<3>());
  H.block<3, 1>(0, 3) = xi.segment<3>(3);
  H.block<3, 1>(0, 4) = xi.tail<3>();
  return H;
}

inline Vec9 se23_vee(const Mat5& H) {
  Vec9 xi;
  xi.head<3>() = unskew(H.block<3, 3>(0, 0));
  xi.segment<3>(3) = H.block<3, 1>(0, 3);
  xi.tail<3>() = H.block<3, 1>(0, 4);
  return xi;
}

/// Coupling block of the SE_2(3) left Jacobian: the (nu,phi) and (rho,phi)
/// blocks are q_matrix(phi, nu) and q_matrix(phi, rho).
/// The c2/c3 closed forms lose all digits below th ~ 1e-2, hence the wide
/// series branch.
inline Mat3 q_matrix(const Vec3& phi, const Vec3& x) {
  const double th = phi.norm();
  const Mat3 P = skew(phi);
  const Mat3 X = skew(x);
  double c1, c2, c3;
  if (th < kSeriesAngle) {
    const double t2 = th * th;
    const double t4 = t2 * t2;
    c1 = 1.0 / 6.0 - t2 / 120.0 + t4 / 5040.0 - t4 * t2 / 362880.0;
    c2 = 1.0 / 24.0 - t2 / 720.0 + t4 / 40320.0 - t4 * t2 / 3628800.0;
    c3 = 1.0 / 120.0 - t2 / 2520.0 + t4 / 120960.0 - t4 * t2 / 9979200.0;
  } else {
    const double t2 = th * th;
    const double t4 = t2 * t2;
    const double sth = std::sin(th);
    const double cth = std::cos(th);
    c1 = (th - sth) / (t2 * th);
    c2 = (t2 + 2.0 * cth - 2.0) / (2.0 * t4);
    c3 = (2.0 * th - 3.0 * sth + th * cth) / (2.0 * t4 * th);
  }
  const Mat3 PX = P * X;
  const Mat3 XP = X * P;
  const Mat3 PXP = PX * P;
  return 0.5 * X + c1 * (PX + XP + PXP) +
         c2 * (P * PX + XP * P - 3.0 * PXP) + c3 * (PXP * P + P * PXP);
}

/// 9x9 left Jacobian of SE_2(3) in (phi, nu, rho) ordering.
inline Mat9 se23_left_jacobian(const Vec9& xi) {
  const Vec3 phi = xi.head<3>();
  const Mat3 J = so3_left_jacobian(phi);
  Mat9 out = Mat9::Zero();
  out.block<3, 3>(0, 0) = J;
  out.block<3, 3>(3, 3) = J;
  out.block<3, 3>(6, 6) = J;
  out.block<3, 3>(3, 0) = q_matrix(phi, xi.segment<3>(3));
  out.block<3, 3>(6, 0) = q_matrix(phi, xi.tail<3>());
  return out;
}

}  // namespace relnav
