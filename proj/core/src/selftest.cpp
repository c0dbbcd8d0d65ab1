#include "relnav/selftest.hpp"

#include <cmath>
#include <ostream>

#include "relnav/filter.hpp"
#include "relnav/oracle.hpp"
#include "relnav/process_model.hpp"
#include "relnav/rng.hpp"

namespace relnav {

namespace {

struct Reporter {
  std::ostream& out;
  bool all_ok = true;

  void suite(const char* name, double worst, double tol) {
    const bool ok = std::isfinite(worst) && worst <= tol;
    all_ok = all_ok && ok;
    out << (ok ? "ok   " : "FAIL ") << name << ": worst " << worst
        << " (tolerance " << tol << ")\n";
  }
};

Vec3 random_vec3(Rng& rng, double amp) { return rng.uniform_vec3(amp); }

double relative_error(const Eigen::MatrixXd& got,
                      const Eigen::MatrixXd& want) {
  const double scale = std::max(want.cwiseAbs().maxCoeff(), 1.0);
  return (got - want).cwiseAbs().maxCoeff() / scale;
}

double check_step_vs_expm(Rng& rng, int draws) {
  double worst = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Vec3 omega = random_vec3(rng, 5.0);
    const Vec3 accel = random_vec3(rng, 20.0);
    const Vec3 bg = random_vec3(rng, 0.05);
    const Vec3 ba = random_vec3(rng, 0.5);
    const double dt = 0.001 + 0.049 * rng.uniform01();
    const Mat5 gen =
        (generator_rates(omega, accel) - generator_bias(bg, ba)) * dt;
    const Mat5 reference = expm(gen);
    const Mat5 direct = make_b(omega, accel, bg, ba, dt).matrix();
    worst = std::max(worst, (direct - reference).cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_input_map(Rng& rng, int draws) {
  double worst = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Vec3 omega = random_vec3(rng, 3.0);
    const Vec3 accel = random_vec3(rng, 10.0);
    const Vec3 bg = random_vec3(rng, 0.05);
    const Vec3 ba = random_vec3(rng, 0.5);
    const double dt = 0.005 + 0.02 * rng.uniform01();
    const ProcessJacobians jac =
        linearize_b(omega, accel, bg, ba, dt, BiasMode::kFull);
    const ExtendedPose b_bar = make_b(omega, accel, bg, ba, dt);
    const auto f = [&](const Eigen::VectorXd& d) -> Eigen::VectorXd {
      const ExtendedPose b = make_b(omega, accel, bg + d.head<3>(),
                                    ba + d.tail<3>(), dt);
      return se23_log(b_bar.inverse() * b);
    };
    const Eigen::MatrixXd fd =
        central_difference(f, Eigen::VectorXd::Zero(6), 1e-6);
    worst = std::max(worst, relative_error(fd, -jac.L));
  }
  return worst;
}

double check_left_jacobian(Rng& rng, int draws) {
  double worst = 0.0;
  for (int k = 0; k < draws; ++k) {
    Vec9 xi;
    for (int i = 0; i < 9; ++i) xi[i] = rng.uniform(-1.0, 1.0);
    const ExtendedPose base = se23_exp(xi);
    const auto f = [&](const Eigen::VectorXd& d) -> Eigen::VectorXd {
      Vec9 moved = xi + Vec9(d);
      return se23_log(se23_exp(moved) * base.inverse());
    };
    const Eigen::MatrixXd fd =
        central_difference(f, Eigen::VectorXd::Zero(9), 1e-6);
    worst = std::max(worst, relative_error(fd, se23_left_jacobian(xi)));
  }
  return worst;
}

double check_rmi_equivalence(Rng& rng) {
  NoiseParams noise;
  const double dt = 0.01;
  const Vec3 bias_est = random_vec3(rng, 0.01);
  const Mat3 bias_cov = 1e-8 * Mat3::Identity();
  Rmi rmi = Rmi::Begin(0);
  ExtendedPose direct = ExtendedPose::Identity();
  for (int j = 0; j < 50; ++j) {
    ImuSample u;
    u.t = j * dt;
    u.gyro = random_vec3(rng, 3.0);
    u.accel = random_vec3(rng, 10.0);
    rmi = rmi_append(rmi, u, bias_est, bias_cov, noise, dt);
    direct = direct * make_b(u.gyro, u.accel, bias_est, Vec3::Zero(), dt);
  }
  double worst = (rmi.delta.matrix() - direct.matrix()).cwiseAbs().maxCoeff();
  worst = std::max(worst, std::abs(rmi.duration - 50 * dt));
  return worst;
}

double check_rk4_residual(Rng& rng, int draws) {
  double worst = 0.0;
  const double dt = 0.01;
  for (int k = 0; k < draws; ++k) {
    Vec9 xi;
    for (int i = 0; i < 9; ++i) xi[i] = rng.uniform(-1.0, 1.0);
    const Mat5 T = se23_exp(xi).matrix();
    const Vec3 w0 = random_vec3(rng, 3.0);
    const Vec3 a0 = random_vec3(rng, 10.0);
    const Vec3 wi = random_vec3(rng, 3.0);
    const Vec3 ai = random_vec3(rng, 10.0);
    const Mat5 step = make_b(w0, a0, Vec3::Zero(), Vec3::Zero(), dt)
                          .inverse()
                          .matrix() *
                      T * make_b(wi, ai, Vec3::Zero(), Vec3::Zero(), dt)
                              .matrix();
    const Mat5 rk4 = sylvester_rk4_step(T, generator_rates(w0, a0),
                                        generator_rates(wi, ai), dt);
    worst = std::max(worst, (step - rk4).cwiseAbs().maxCoeff());
  }
  return worst;
}

FilterState random_state(Rng& rng, double clock) {
  FilterState x;
  Vec9 xi;
  for (int i = 0; i < 9; ++i) xi[i] = rng.uniform(-1.0, 1.0);
  x.T = se23_exp(xi).with_c(clock);
  x.bias_gyro = random_vec3(rng, 0.02);
  x.bias_accel_rel = random_vec3(rng, 0.2);
  x.P = Mat15::Identity();
  return x;
}

double check_filter_jacobian(Rng& rng, int draws, bool with_rmi) {
  NoiseParams noise;
  const double dt = 0.01;
  double worst = 0.0;
  for (int k = 0; k < draws; ++k) {
    FilterState x = random_state(rng, with_rmi ? -3.0 * dt : -2.0 * dt);
    ImuSample u0;
    u0.t = 0.0;
    u0.gyro = random_vec3(rng, 3.0);
    u0.accel = random_vec3(rng, 10.0);

    Rmi rmi = Rmi::Begin(0);
    if (with_rmi) {
      const Vec3 est = Vec3::Zero();
      for (int j = 0; j < 4; ++j) {
        ImuSample ui;
        ui.t = j * dt;
        ui.gyro = random_vec3(rng, 3.0);
        ui.accel = random_vec3(rng, 10.0);
        rmi = rmi_append(rmi, ui, est, Mat3::Zero(), noise, dt);
      }
    }
    const Rmi* rp = with_rmi ? &rmi : nullptr;
    const Mat15 A = process_jacobian(x, u0, rp, dt);

    const auto propagate_mean = [&](const FilterState& s) {
      FilterState out = s;
      const ExtendedPose b0 = make_b(u0, s.bias_gyro, s.bias_accel_rel, dt);
      out.T = b0.inverse() * s.T;
      if (with_rmi) out.T = out.T * rmi.delta;
      return out;
    };
    const FilterState bar = propagate_mean(x);
    const auto f = [&](const Eigen::VectorXd& e) -> Eigen::VectorXd {
      FilterState xe = x;
      xe.T = x.T * se23_exp(Vec9(e.head<9>()));
      xe.bias_gyro += e.segment<3>(9);
      xe.bias_accel_rel += e.tail<3>();
      const FilterState prop = propagate_mean(xe);
      Vec15 out;
      out.head<9>() = se23_log(bar.T.inverse() * prop.T);
      out.segment<3>(9) = prop.bias_gyro - bar.bias_gyro;
      out.tail<3>() = prop.bias_accel_rel - bar.bias_accel_rel;
      return out;
    };
    const Eigen::MatrixXd fd =
        central_difference(f, Eigen::VectorXd::Zero(15), 1e-6);
    worst = std::max(worst, relative_error(fd, A));
  }
  return worst;
}

double check_range_jacobian(Rng& rng, int draws) {
  double worst = 0.0;
  for (int k = 0; k < draws; ++k) {
    FilterState x = random_state(rng, 0.0);
    x.T.r += Vec3(2.0, 0.5, -0.5);  // keep the predicted range well away
    const Vec3 tag0 = random_vec3(rng, 0.3);
    const Vec3 tagi = random_vec3(rng, 0.3);
    const Eigen::Matrix<double, 1, 15> H = range_jacobian(x, tag0, tagi);
    const auto f = [&](const Eigen::VectorXd& e) -> Eigen::VectorXd {
      FilterState xe = x;
      xe.T = x.T * se23_exp(Vec9(e.head<9>()));
      Eigen::VectorXd out(1);
      out[0] = predict_range(xe, tag0, tagi);
      return out;
    };
    const Eigen::MatrixXd fd =
        central_difference(f, Eigen::VectorXd::Zero(9), 1e-6);
    Eigen::MatrixXd want = H.leftCols<9>();
    worst = std::max(worst, relative_error(fd, want));
  }
  return worst;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  Reporter rep{out};
  Rng rng(0x5e1f7e57u);

  rep.suite("discrete step vs matrix exponential (200 draws)",
            check_step_vs_expm(rng, 200), 1e-10);
  rep.suite("input map vs central differences (50 draws)",
            check_input_map(rng, 50), 1e-5);
  rep.suite("left Jacobian identity vs central differences (50 draws)",
            check_left_jacobian(rng, 50), 1e-5);
  rep.suite("preintegration vs direct product (50 steps)",
            check_rmi_equivalence(rng), 1e-12);
  rep.suite("discrete step vs RK4 of the continuous flow (100 draws)",
            check_rk4_residual(rng, 100), 1e-6);
  rep.suite("transition Jacobian, communication-free (20 draws)",
            check_filter_jacobian(rng, 20, false), 1e-5);
  rep.suite("transition Jacobian, increment absorption (20 draws)",
            check_filter_jacobian(rng, 20, true), 1e-5);
  rep.suite("range Jacobian vs central differences (20 draws)",
            check_range_jacobian(rng, 20), 1e-5);

  out << (rep.all_ok ? "selftest: all suites passed\n"
                     : "selftest: FAILURES above\n");
  return rep.all_ok;
}

}  // namespace relnav
