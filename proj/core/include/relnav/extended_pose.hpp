#pragma once

#include "relnav/lie.hpp"

namespace relnav {

/// Element of the group of 5x5 matrices
///
///   [ C  v  r ]
///   [ 0  1  c ]
///   [ 0  0  1 ]
///
/// with C a rotation.  c = 0 gives an extended pose (attitude, velocity,
/// position); nonzero c carries the accumulated time offset that couples
/// velocity into position under composition, which is what the one-step
/// propagators and preintegrated increments live on.
struct ExtendedPose {
  Mat3 C = Mat3::Identity();
  Vec3 v = Vec3::Zero();
  Vec3 r = Vec3::Zero();
  double c = 0.0;

  static ExtendedPose Identity() { return ExtendedPose{}; }

  /// Group product.  c adds; the right factor's c couples the left factor's
  /// velocity into position.
  ExtendedPose operator*(const ExtendedPose& o) const {
    ExtendedPose out;
    out.C = C * o.C;
    out.v = C * o.v + v;
    out.r = C * o.r + r + o.c * v;
    out.c = c + o.c;
    return out;
  }

  ExtendedPose inverse() const {
    ExtendedPose out;
    out.C = C.transpose();
    out.v = -(out.C * v);
    out.r = -(out.C * (r - c * v));
    out.c = -c;
    return out;
  }

  Mat5 matrix() const {
    Mat5 M = Mat5::Identity();
    M.block<3, 3>(0, 0) = C;
    M.block<3, 1>(0, 3) = v;
    M.block<3, 1>(0, 4) = r;
    M(3, 4) = c;
    return M;
  }

  static ExtendedPose FromMatrix(const Mat5& M) {
    ExtendedPose out;
    out.C = M.block<3, 3>(0, 0);
    out.v = M.block<3, 1>(0, 3);
    out.r = M.block<3, 1>(0, 4);
    out.c = M(3, 4);
    return out;
  }

  /// Drift of C from orthonormality, max-norm of C^T C - I.
  double orthonormality_drift() const {
    return (C.transpose() * C - Mat3::Identity()).cwiseAbs().maxCoeff();
  }

  /// Projects C back onto SO(3) through the polar factor of its SVD.
  void reorthonormalize() {
    Eigen::JacobiSVD<Mat3> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 D = Mat3::Identity();
    D(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant();
    C = svd.matrixU() * D * svd.matrixV().transpose();
  }

  ExtendedPose with_c(double cc) const {
    ExtendedPose out = *this;
    out.c = cc;
    return out;
  }
};

/// exp: R^9 -> SE_2(3) (result has c = 0).
inline ExtendedPose se23_exp(const Vec9& xi) {
  const Vec3 phi = xi.head<3>();
  const Mat3 J = so3_left_jacobian(phi);
  ExtendedPose T;
  T.C = so3_exp(phi);
  T.v = J * xi.segment<3>(3);
  T.r = J * xi.tail<3>();
  T.c = 0.0;
  return T;
}

/// log: SE_2(3) -> R^9.  Requires c = 0; nu and rho are recovered through a
/// linear solve with J_l rather than an explicit inverse.
inline Vec9 se23_log(const ExtendedPose& T) {
  if (std::abs(T.c) > 1e-9) {
    throw std::invalid_argument("se23_log: nonzero time entry");
  }
  const Vec3 phi = so3_log(T.C);
  const Mat3 J = so3_left_jacobian(phi);
  const auto lu = J.partialPivLu();
  Vec9 xi;
  xi.head<3>() = phi;
  xi.segment<3>(3) = lu.solve(T.v);
  xi.tail<3>() = lu.solve(T.r);
  return xi;
}

/// Adjoint of T acting on (phi, nu, rho): Ad(T) xi = vee(T hat(xi) T^-1).
/// The time entry folds into the position row.
inline Mat9 de23_adjoint(const ExtendedPose& T) {
  Mat9 A = Mat9::Zero();
  A.block<3, 3>(0, 0) = T.C;
  A.block<3, 3>(3, 3) = T.C;
  A.block<3, 3>(6, 6) = T.C;
  A.block<3, 3>(3, 0) = skew(T.v) * T.C;
  A.block<3, 3>(6, 0) = skew(T.r - T.c * T.v) * T.C;
  A.block<3, 3>(6, 3) = -T.c * T.C;
  return A;
}

/// Clock factor M(dt): identity blocks with c = dt.
inline ExtendedPose m_matrix(double dt) {
  ExtendedPose M;
  M.c = dt;
  return M;
}

}  // namespace relnav
