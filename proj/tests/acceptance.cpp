// Acceptance checks for the estimation stack.  Each check prints exactly one
// PASS/FAIL line with its measured numbers; the process exits nonzero if any
// check failed.  Tolerances and runtime budgets are fixed contracts.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <unistd.h>

#include <boost/math/distributions/chi_squared.hpp>

#include "relnav/config.hpp"
#include "relnav/filter.hpp"
#include "relnav/logio.hpp"
#include "relnav/oracle.hpp"
#include "relnav/rng.hpp"
#include "relnav/simulation.hpp"

using namespace relnav;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, bool pass, const std::string& text) {
  std::printf("%s  %d. %s\n", pass ? "PASS" : "FAIL", index, text.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string strf(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- shared error-state helpers ------------------------------------------

FilterState inject(const FilterState& x, const Vec15& d) {
  FilterState out = x;
  out.T = x.T * se23_exp(d.head<9>());
  out.bias_gyro += d.segment<3>(9);
  out.bias_accel_rel += d.tail<3>();
  return out;
}

Vec15 extract(const FilterState& base, const FilterState& x) {
  Vec15 d;
  d.head<9>() = se23_log((base.T.inverse() * x.T).with_c(0.0));
  d.segment<3>(9) = x.bias_gyro - base.bias_gyro;
  d.tail<3>() = x.bias_accel_rel - base.bias_accel_rel;
  return d;
}

FilterState random_state(Rng& rng, double clock) {
  FilterState x;
  Vec9 xi;
  xi.head<3>() = rng.uniform_vec3(0.8);
  xi.segment<3>(3) = rng.uniform_vec3(1.0);
  xi.tail<3>() = rng.uniform_vec3(2.0);
  x.T = se23_exp(xi);
  x.T.r += Vec3(2.5, 0.0, 0.0);  // keep ranges away from zero
  x.T.c = clock;
  x.bias_gyro = rng.uniform_vec3(0.02);
  x.bias_accel_rel = rng.uniform_vec3(0.1);
  Eigen::Matrix<double, 15, 20> G;
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 20; ++j) G(i, j) = rng.gaussian();
  x.P = 1e-3 * G * G.transpose();
  return x;
}

ImuSample random_imu(Rng& rng, double t) {
  return ImuSample{t, rng.uniform_vec3(1.5), rng.uniform_vec3(8.0)};
}

double worst_rel_col(const Eigen::MatrixXd& analytic,
                     const Eigen::MatrixXd& fd) {
  double worst = 0.0;
  for (int k = 0; k < analytic.cols(); ++k) {
    const double denom = std::max(1.0, analytic.col(k).norm());
    worst = std::max(worst, (fd.col(k) - analytic.col(k)).norm() / denom);
  }
  return worst;
}

// worst relative column error of the filter transition against central
// differences of the corresponding mean map
double transition_fd_error(const FilterState& x, const ImuSample& u0,
                           const Rmi* rmi, const NoiseParams& params,
                           double dt) {
  const auto step = [&](const FilterState& s) -> FilterState {
    return rmi ? update_on_rmi(s, u0, *rmi, params, dt)
               : predict_no_comm(s, u0, params, dt);
  };
  const Mat15 A = process_jacobian(x, u0, rmi, dt);
  const FilterState base = step(x);
  const double h = 1e-6;
  double worst = 0.0;
  for (int k = 0; k < 15; ++k) {
    Vec15 d = Vec15::Zero();
    d(k) = h;
    const Vec15 fd = (extract(base, step(inject(x, d))) -
                      extract(base, step(inject(x, -d)))) /
                     (2.0 * h);
    const double denom = std::max(1.0, A.col(k).norm());
    worst = std::max(worst, (fd - A.col(k)).norm() / denom);
  }
  return worst;
}

// ---- 1: closed-form one-step propagator ----------------------------------

void check_closed_form() {
  const auto t0 = Clock::now();
  Rng rng(9101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 w = rng.uniform_vec3(2.0);
    const Vec3 a = rng.uniform_vec3(12.0);
    Vec3 bg = rng.uniform_vec3(0.05);
    const Vec3 ba = rng.uniform_vec3(0.5);
    if (i % 10 == 9) bg = w - rng.uniform_vec3(1e-9);  // small-angle branch
    const double dt = rng.uniform(0.001, 0.1);
    const Eigen::MatrixXd ref =
        expm(dt * (generator_rates(w, a) - generator_bias(bg, ba)));
    const double err =
        (make_b(w, a, bg, ba, dt).matrix() - ref).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
  }
  const double el = seconds_since(t0);
  report(1, worst <= 1e-10 && el < 10.0,
         strf("one-step propagator equals the numeric matrix exponential: "
              "worst |diff| %.2e over 1000 draws (tol 1e-10, %.1f s)",
              worst, el));
}

// ---- 2: analytic Jacobians vs central differences ------------------------

double input_map_family(Rng& rng, BiasMode mode, int points) {
  double worst = 0.0;
  const double h = 1e-6;
  for (int i = 0; i < points; ++i) {
    const Vec3 w = rng.uniform_vec3(3.0);
    const Vec3 a = rng.uniform_vec3(15.0);
    const Vec3 bg = rng.uniform_vec3(0.1);
    const Vec3 ba =
        mode == BiasMode::kFull ? rng.uniform_vec3(0.5) : Vec3::Zero();
    const double dt = rng.uniform(0.002, 0.05);
    const ExtendedPose base = make_b(w, a, bg, ba, dt);
    const Mat96 L = linearize_b(w, a, bg, ba, dt, mode).L;
    const auto eval = [&](const Vec6& d) {
      return se23_log(
          (base.inverse() * make_b(w + d.head<3>(), a + d.tail<3>(), bg, ba,
                                   dt))
              .with_c(0.0));
    };
    Mat96 fd;
    for (int k = 0; k < 6; ++k) {
      Vec6 d = Vec6::Zero();
      d(k) = h;
      fd.col(k) = (eval(d) - eval(-d)) / (2.0 * h);
    }
    worst = std::max(worst, worst_rel_col(L, fd));
  }
  return worst;
}

double bias_map_family(Rng& rng, BiasMode mode, int points) {
  double worst = 0.0;
  const double h = 1e-6;
  for (int i = 0; i < points; ++i) {
    const Vec3 w = rng.uniform_vec3(3.0);
    const Vec3 a = rng.uniform_vec3(15.0);
    const Vec3 bg = rng.uniform_vec3(0.1);
    const Vec3 ba =
        mode == BiasMode::kFull ? rng.uniform_vec3(0.5) : Vec3::Zero();
    const double dt = rng.uniform(0.002, 0.05);
    const ExtendedPose base = make_b(w, a, bg, ba, dt);
    const Mat96 expect = -linearize_b(w, a, bg, ba, dt, mode).bias_block();
    // in gyro-only mode a perturbed accelerometer bias never reaches the
    // factor, so those columns must come out zero on both sides
    const auto eval = [&](const Vec6& d) {
      const Vec3 bap =
          mode == BiasMode::kFull ? Vec3(ba + d.tail<3>()) : ba;
      return se23_log(
          (base.inverse() * make_b(w, a, bg + d.head<3>(), bap, dt))
              .with_c(0.0));
    };
    Mat96 fd;
    for (int k = 0; k < 6; ++k) {
      Vec6 d = Vec6::Zero();
      d(k) = h;
      fd.col(k) = (eval(d) - eval(-d)) / (2.0 * h);
    }
    worst = std::max(worst, worst_rel_col(expect, fd));
  }
  return worst;
}

double increment_input_family(Rng& rng, int points) {
  double worst = 0.0;
  const double h = 1e-6;
  const double dt = 0.01;
  const NoiseParams params;
  for (int i = 0; i < points; ++i) {
    const Vec3 bg_est = rng.uniform_vec3(0.02);
    Rmi rmi = Rmi::Begin(0);
    for (int j = 0; j < 3; ++j) {
      rmi = rmi_append(rmi, random_imu(rng, j * dt), bg_est,
                       1e-8 * Mat3::Identity(), params, dt);
    }
    const ImuSample u = random_imu(rng, 3 * dt);
    const Rmi base =
        rmi_append(rmi, u, bg_est, 1e-8 * Mat3::Identity(), params, dt);
    const Mat96 L =
        linearize_b(u.gyro, u.accel, bg_est, Vec3::Zero(), dt,
                    BiasMode::kGyroOnly)
            .L;
    const auto eval = [&](int k, double step) {
      ImuSample up = u;
      if (k < 3) {
        up.gyro(k) += step;
      } else {
        up.accel(k - 3) += step;
      }
      const Rmi r =
          rmi_append(rmi, up, bg_est, 1e-8 * Mat3::Identity(), params, dt);
      return se23_log((base.delta.inverse() * r.delta).with_c(0.0));
    };
    Mat96 fd;
    for (int k = 0; k < 6; ++k) {
      fd.col(k) = (eval(k, h) - eval(k, -h)) / (2.0 * h);
    }
    worst = std::max(worst, worst_rel_col(L, fd));
  }
  return worst;
}

double transition_family(Rng& rng, bool absorbing, int points) {
  const NoiseParams params;
  const double dt = 0.01;
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    if (absorbing) {
      const FilterState x = random_state(rng, -3.0 * dt);
      const ImuSample u0 = random_imu(rng, 0.03);
      Rmi rmi = Rmi::Begin(0);
      for (int j = 0; j < 4; ++j) {
        rmi = rmi_append(rmi, random_imu(rng, j * dt), rng.uniform_vec3(0.01),
                         1e-8 * Mat3::Identity(), params, dt);
      }
      worst = std::max(worst, transition_fd_error(x, u0, &rmi, params, dt));
    } else {
      const FilterState x = random_state(rng, -2.0 * dt);
      const ImuSample u0 = random_imu(rng, 0.02);
      worst = std::max(worst, transition_fd_error(x, u0, nullptr, params, dt));
    }
  }
  return worst;
}

double range_map_family(Rng& rng, int points) {
  double worst = 0.0;
  const double h = 1e-6;
  for (int i = 0; i < points; ++i) {
    const FilterState x = random_state(rng, 0.0);
    const Vec3 tag0 = rng.uniform_vec3(0.3);
    const Vec3 tagi = rng.uniform_vec3(0.3);
    const Eigen::Matrix<double, 1, 15> H = range_jacobian(x, tag0, tagi);
    if (H.rightCols<6>().cwiseAbs().maxCoeff() != 0.0) return 1.0;
    for (int k = 0; k < 15; ++k) {
      Vec15 d = Vec15::Zero();
      d(k) = h;
      const double fd = (predict_range(inject(x, d), tag0, tagi) -
                         predict_range(inject(x, -d), tag0, tagi)) /
                        (2.0 * h);
      worst = std::max(worst,
                       std::abs(fd - H(0, k)) / std::max(1.0, std::abs(H(0, k))));
    }
  }
  return worst;
}

double left_jacobian_family(Rng& rng, int points) {
  double worst = 0.0;
  const double h = 1e-6;
  for (int i = 0; i < points; ++i) {
    Vec9 xi;
    xi.head<3>() = rng.uniform_vec3(1.2);
    xi.segment<3>(3) = rng.uniform_vec3(2.0);
    xi.tail<3>() = rng.uniform_vec3(2.0);
    const Mat9 J = se23_left_jacobian(xi);
    const ExtendedPose inv = se23_exp(xi).inverse();
    Mat9 fd;
    for (int k = 0; k < 9; ++k) {
      Vec9 d = Vec9::Zero();
      d(k) = h;
      fd.col(k) =
          (se23_log((se23_exp(xi + d) * inv).with_c(0.0)) -
           se23_log((se23_exp(xi - d) * inv).with_c(0.0))) /
          (2.0 * h);
    }
    worst = std::max(worst, worst_rel_col(J, fd));
  }
  return worst;
}

void check_jacobians() {
  const auto t0 = Clock::now();
  Rng rng(9202);
  struct Family {
    const char* name;
    double worst;
  };
  const Family families[] = {
      {"local factor input map", input_map_family(rng, BiasMode::kFull, 120)},
      {"broadcast factor input map",
       input_map_family(rng, BiasMode::kGyroOnly, 120)},
      {"local factor bias map", bias_map_family(rng, BiasMode::kFull, 120)},
      {"broadcast factor bias map",
       bias_map_family(rng, BiasMode::kGyroOnly, 120)},
      {"increment noise input map", increment_input_family(rng, 120)},
      {"filter transition, propagation", transition_family(rng, false, 100)},
      {"filter transition, absorption", transition_family(rng, true, 100)},
      {"range measurement map", range_map_family(rng, 120)},
      {"exponential left Jacobian identity", left_jacobian_family(rng, 120)},
  };
  double worst = 0.0;
  const char* worst_name = families[0].name;
  bool all_ok = true;
  for (const Family& f : families) {
    if (f.worst > worst) {
      worst = f.worst;
      worst_name = f.name;
    }
    if (!(f.worst <= 1e-5)) all_ok = false;
  }
  const double el = seconds_since(t0);
  report(2, all_ok && el < 60.0,
         strf("analytic Jacobians match central differences: worst rel err "
              "%.2e (%s; 9 families, >=100 points each, tol 1e-5, %.1f s)",
              worst, worst_name, el));
}

// ---- 3: windowed vs step-by-step absorption -------------------------------

void check_window_equivalence() {
  Rng rng(9303);
  const NoiseParams params;
  const double dt = 0.01;
  double worst_mean = 0.0;
  double worst_cov = 0.0;
  for (const int k : {1, 10, 100}) {
    std::vector<ImuSample> u0, ui;
    for (int j = 0; j < k; ++j) {
      u0.push_back(random_imu(rng, j * dt));
      ui.push_back(random_imu(rng, j * dt));
    }
    const Vec3 nb_est = rng.uniform_vec3(0.01);
    const Mat3 nb_cov = 1e-8 * Mat3::Identity();
    FilterState x0 = random_state(rng, 0.0);
    x0.T.c = 0.0;

    FilterState a = x0;
    Rmi window = Rmi::Begin(0);
    for (int j = 0; j < k; ++j) {
      window = rmi_append(window, ui[j], nb_est, nb_cov, params, dt);
    }
    for (int j = 0; j + 1 < k; ++j) {
      a = predict_no_comm(a, u0[j], params, dt);
    }
    a = update_on_rmi(a, u0[k - 1], window, params, dt);

    FilterState b = x0;
    for (int j = 0; j < k; ++j) {
      Rmi unit = Rmi::Begin(j);
      unit = rmi_append(unit, ui[j], nb_est, nb_cov, params, dt);
      b = update_on_rmi(b, u0[j], unit, params, dt);
    }

    const double mean_diff = std::max(
        {se23_log((a.T.inverse() * b.T).with_c(0.0)).norm(),
         (a.bias_gyro - b.bias_gyro).norm(),
         (a.bias_accel_rel - b.bias_accel_rel).norm()});
    const double cov_diff = (a.P - b.P).cwiseAbs().maxCoeff() /
                            std::max(1.0, a.P.cwiseAbs().maxCoeff());
    worst_mean = std::max(worst_mean, mean_diff);
    worst_cov = std::max(worst_cov, cov_diff);
  }
  report(3, worst_mean <= 1e-12 && worst_cov <= 1e-9,
         strf("absorbing one windowed increment equals step-by-step "
              "absorption for k in {1, 10, 100}: mean diff %.2e (tol 1e-12), "
              "covariance diff %.2e (tol 1e-9)",
              worst_mean, worst_cov));
}

// ---- 4: order of the relative-bias step -----------------------------------

void check_bias_step_order() {
  Rng rng(9404);
  const double dts[3] = {0.02, 0.01, 0.005};
  double err[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < 100; ++i) {
    const Vec3 w0 = rng.uniform_vec3(2.0);
    const Vec3 a0 = rng.uniform_vec3(10.0);
    const Vec3 wi = rng.uniform_vec3(2.0);
    const Vec3 ai = rng.uniform_vec3(10.0);
    const Vec3 beta0 = rng.uniform_vec3(0.3);
    const Vec3 betai = rng.uniform_vec3(0.3);
    const Vec3 n0 = rng.uniform_vec3(0.1);
    const Vec3 ni = rng.uniform_vec3(0.1);
    Vec9 xi;
    xi.head<3>() = rng.uniform_vec3(1.0);
    xi.segment<3>(3) = rng.uniform_vec3(1.0);
    xi.tail<3>() = rng.uniform_vec3(2.0);
    const ExtendedPose T = se23_exp(xi);
    for (int d = 0; d < 3; ++d) {
      const double dt = dts[d];
      const ExtendedPose b0 = make_b(w0, a0, Vec3::Zero(), Vec3::Zero(), dt);
      const ExtendedPose bi = make_b(wi, ai, Vec3::Zero(), Vec3::Zero(), dt);
      const Vec3 rel = rel_accel_bias(beta0, betai, T.C);
      const Vec3 approx =
          propagate_rel_accel_bias(rel, T, b0, bi, n0, ni, dt);
      const Vec3 exact = propagate_rel_accel_bias_exact(beta0, betai, T, b0,
                                                        bi, n0, ni, dt);
      err[d] += (approx - exact).norm();
    }
  }
  const double r1 = err[0] / err[1];
  const double r2 = err[1] / err[2];
  const bool ok =
      r1 >= 1.7 && r1 <= 2.3 && r2 >= 1.7 && r2 <= 2.3;
  report(4, ok,
         strf("relative-bias step error halves with the step size: ratios "
              "%.2f and %.2f across dt {0.02, 0.01, 0.005} over 100 trials "
              "(need [1.7, 2.3])",
              r1, r2));
}

// ---- 5: bias estimates converge inside their envelopes ---------------------

void check_bias_envelopes() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg = default_config();
  cfg.seed = 42;
  cfg.trials = 1;
  cfg.constant_biases = true;
  cfg.trajectory.duration = 60.0;
  // constants at the magnitude the random walk reaches over one trial; the
  // larger turn-on-scale constants belong to the RMSE comparison, where the
  // relative-bias propagation model's envelope no longer applies
  cfg.comparison.bias_gyro =
      cfg.noise.sigma_gyro_rw * std::sqrt(cfg.trajectory.duration);
  cfg.comparison.bias_accel =
      cfg.noise.sigma_accel_rw * std::sqrt(cfg.trajectory.duration);
  cfg.trajectory.seed_jitter = false;
  cfg.noise.rmi_period = 0.1;
  cfg.log.decimate = 1;

  const TrialResult res = run_trial(cfg, 0);
  const Schedule sc = make_schedule(cfg);
  const int m = sc.steps_rmi;
  long inside[6] = {0, 0, 0, 0, 0, 0};
  long total = 0;
  for (const EstimateRow& row : res.primary.rows) {
    if (row.t <= 0.2 * cfg.trajectory.duration) continue;
    const int s = static_cast<int>(std::lround(row.t / sc.dt));
    const int w0 = (s / m) * m;
    const TruthRecord& tr = res.data.truth[static_cast<std::size_t>(s)];
    // between communications the estimate references the neighbour's frame
    // at the window start; score against that same convention
    const Vec3 rel_true =
        s % m == 0 ? tr.bias_accel_rel()
                   : Vec3(tr.bias_accel_0 -
                          res.data.truth[static_cast<std::size_t>(w0)]
                                  .relative()
                                  .C *
                              tr.bias_accel_i);
    const Vec3 eg = tr.bias_gyro_0 - row.bias_gyro;
    const Vec3 ea = rel_true - row.bias_accel_rel;
    ++total;
    for (int j = 0; j < 3; ++j) {
      if (std::abs(eg(j)) <= 3.0 * std::sqrt(row.p_diag(9 + j))) ++inside[j];
      if (std::abs(ea(j)) <= 3.0 * std::sqrt(row.p_diag(12 + j)))
        ++inside[3 + j];
    }
  }
  double min_frac = 1.0;
  for (long n : inside) {
    min_frac = std::min(min_frac, static_cast<double>(n) /
                                      static_cast<double>(total));
  }
  const double el = seconds_since(t0);
  report(5,
         min_frac >= 0.95 && !res.primary.diverged && total > 0 && el < 30.0,
         strf("constant biases: estimation errors stay inside 3-sigma after "
              "the transient; min per-component fraction %.3f over %ld "
              "samples (need >= 0.95, %.1f s)",
              min_frac, total, el));
}

// ---- 6: Monte Carlo consistency --------------------------------------------

void check_consistency() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg = default_config();
  cfg.seed = 1234;
  cfg.trials = 50;
  cfg.trajectory.duration = 60.0;
  cfg.trajectory.seed_jitter = true;
  cfg.noise.rmi_period = 0.1;
  cfg.log.decimate = 100;
  // consistency is scored in the protocol where biases enter through the
  // random walk alone; initial bias offsets push the first-order filter
  // outside its linearization envelope and the pose covariance understates
  // the transient's imprint for tens of seconds
  cfg.initial_bias_scale = 0.0;

  boost::math::chi_squared dist(static_cast<double>(cfg.trials) * 15.0);
  const double lo = boost::math::quantile(dist, 0.025) / cfg.trials;
  const double hi = boost::math::quantile(dist, 0.975) / cfg.trials;

  std::vector<double> sums;
  std::vector<double> ts;
  int diverged = 0;
  for (int k = 0; k < cfg.trials; ++k) {
    const TrialResult res = run_trial(cfg, k);
    if (res.primary.diverged) ++diverged;
    if (sums.empty()) {
      sums.assign(res.primary.nees_epochs.size(), 0.0);
      ts.resize(res.primary.nees_epochs.size());
      for (std::size_t i = 0; i < ts.size(); ++i) {
        ts[i] = res.primary.nees_epochs[i].t;
      }
    }
    for (std::size_t i = 0; i < res.primary.nees_epochs.size(); ++i) {
      sums[i] += res.primary.nees_epochs[i].value;
    }
  }
  double acc = 0.0;
  int n = 0;
  const double transient = 0.2 * cfg.trajectory.duration;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (ts[i] > transient) {
      acc += sums[i] / cfg.trials;
      ++n;
    }
  }
  const double avg = n > 0 ? acc / n : std::nan("");
  const double el = seconds_since(t0);
  report(6,
         diverged == 0 && n > 0 && avg >= lo && avg <= hi && el < 600.0,
         strf("50-trial consistency: post-transient average NEES %.2f inside "
              "[%.2f, %.2f] (15 dof, %d diverged, %.0f s)",
              avg, lo, hi, diverged, el));
}

// ---- 7: bias estimation pays off -------------------------------------------

void check_comparison() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg = default_config();
  cfg.seed = 99;
  cfg.trials = 10;
  cfg.constant_biases = true;
  cfg.compare_bias = true;
  cfg.trajectory.duration = 60.0;
  cfg.trajectory.seed_jitter = true;
  cfg.noise.rmi_period = 0.1;
  cfg.log.decimate = 100;

  int wins = 0;
  double sum_reduction = 0.0;
  for (int k = 0; k < cfg.trials; ++k) {
    const TrialResult res = run_trial(cfg, k);
    const double with_bias = res.primary.rmse_pos;
    const double without = res.baseline ? res.baseline->rmse_pos : 0.0;
    if (without > 0.0 && with_bias <= 0.8 * without) ++wins;
    if (without > 0.0) sum_reduction += 1.0 - with_bias / without;
  }
  const double el = seconds_since(t0);
  report(7, wins >= 8,
         strf("estimating biases cuts position RMSE by >= 20%% on %d of 10 "
              "seeds (need 8); mean reduction %.0f%% (%.0f s)",
              wins, 100.0 * sum_reduction / cfg.trials, el));
}

// ---- 8: increment bias-correction exactness --------------------------------

bool rmi_bits_equal(const Rmi& x, const Rmi& y) {
  return std::memcmp(x.delta.C.data(), y.delta.C.data(), 9 * sizeof(double)) ==
             0 &&
         std::memcmp(x.delta.v.data(), y.delta.v.data(), 3 * sizeof(double)) ==
             0 &&
         std::memcmp(x.delta.r.data(), y.delta.r.data(), 3 * sizeof(double)) ==
             0 &&
         std::memcmp(&x.delta.c, &y.delta.c, sizeof(double)) == 0 &&
         std::memcmp(x.cov.data(), y.cov.data(), 81 * sizeof(double)) == 0 &&
         std::memcmp(&x.duration, &y.duration, sizeof(double)) == 0;
}

void check_correction_exactness() {
  Rng rng(9808);
  const NoiseParams params;
  const double dt = 0.01;
  const Vec3 bias(0.011, -0.017, 0.008);

  Rmi clean = Rmi::Begin(0);
  Rmi corrected = Rmi::Begin(0);
  Rmi plain = Rmi::Begin(0);
  Rmi accel_arg = Rmi::Begin(0);
  const Vec3 est = rng.uniform_vec3(0.02);
  const Mat3 est_cov = 1e-8 * Mat3::Identity();
  for (int j = 0; j < 200; ++j) {
    const Vec3 w = rng.uniform_vec3(1.5);
    const Vec3 a = rng.uniform_vec3(8.0);
    const ImuSample u{j * dt, w, a};
    const ImuSample biased{j * dt, w + bias, a};
    clean = rmi_append(clean, u, Vec3::Zero(), Mat3::Zero(), params, dt);
    corrected = rmi_append(corrected, biased, bias, Mat3::Zero(), params, dt);
    plain = rmi_append(plain, u, est, est_cov, params, dt);
    accel_arg = rmi_append(accel_arg, u, est, est_cov, params, dt,
                           rng.uniform_vec3(0.5));
  }
  const double diff =
      (clean.delta.matrix() - corrected.delta.matrix()).cwiseAbs().maxCoeff();
  const bool untouched = rmi_bits_equal(plain, accel_arg);
  report(8, diff <= 1e-12 && untouched,
         strf("correcting with the true gyro bias reproduces the clean "
              "increment (|diff| %.1e, tol 1e-12); the accel-bias argument "
              "leaves it bit-identical: %s",
              diff, untouched ? "yes" : "NO"));
}

// ---- 9: end-to-end determinism ---------------------------------------------

void check_determinism() {
  const fs::path root =
      fs::temp_directory_path() /
      ("relnav_acceptance_" + std::to_string(static_cast<long>(::getpid())));
  std::error_code ec;
  fs::remove_all(root, ec);
  fs::create_directories(root);
  const fs::path cfg_path = root / "config.json";
  {
    std::ofstream os(cfg_path);
    os << R"({
  "mode": "simulate",
  "seed": 31,
  "trials": 2,
  "trajectory": {"kind": "circular", "duration": 5.0, "seed_jitter": true},
  "noise": {"rmi_period": 0.1},
  "log": {"decimate": 10, "truth": true, "estimates": true, "events": true}
})";
  }
  const auto run_once = [&](const fs::path& outdir) {
    ::setenv("RELNAV_OUTPUT_DIR", outdir.c_str(), 1);
    const std::string cmd = std::string("\"") + RELNAV_CLI_PATH +
                            "\" simulate --config \"" + cfg_path.string() +
                            "\" > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const int rc1 = run_once(root / "a");
  const int rc2 = run_once(root / "b");
  ::unsetenv("RELNAV_OUTPUT_DIR");

  const auto csv_contents = [](const fs::path& dir) {
    std::map<std::string, std::string> files;
    if (!fs::exists(dir)) return files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() != ".csv") continue;
      std::ifstream is(entry.path(), std::ios::binary);
      std::string body((std::istreambuf_iterator<char>(is)),
                       std::istreambuf_iterator<char>());
      files[entry.path().filename().string()] = std::move(body);
    }
    return files;
  };
  const auto a = csv_contents(root / "a");
  const auto b = csv_contents(root / "b");
  const bool identical = !a.empty() && a == b;
  report(9, rc1 == 0 && rc2 == 0 && identical,
         strf("same config and seed reproduce byte-identical CSV output: "
              "%zu files compared (exit codes %d and %d)",
              a.size(), rc1, rc2));
  fs::remove_all(root, ec);
}

}  // namespace

int main() {
  check_closed_form();
  check_jacobians();
  check_window_equivalence();
  check_bias_step_order();
  check_bias_envelopes();
  check_consistency();
  check_comparison();
  check_correction_exactness();
  check_determinism();
  if (g_failures == 0) {
    std::printf("all 9 checks passed\n");
  } else {
    std::printf("%d of 9 checks FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
