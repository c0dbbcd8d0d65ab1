#include "relnav/simulation.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "relnav/process_model.hpp"

namespace relnav {

namespace {

// True-bias draw is uniform on [-amp, amp] per axis; the amplitude scales
// with the random-walk growth over the trial unless biases are constant.
void bias_draw_amplitudes(const ExperimentConfig& config, double& amp_g,
                          double& amp_a) {
  if (config.constant_biases) {
    amp_g = config.comparison.bias_gyro;
    amp_a = config.comparison.bias_accel;
    return;
  }
  const double root_t = std::sqrt(config.trajectory.duration);
  amp_g = config.initial_bias_scale * config.noise.sigma_gyro_rw * root_t;
  amp_a = config.initial_bias_scale * config.noise.sigma_accel_rw * root_t;
}

int whole_ratio(double value, const char* where,
                std::vector<ConfigViolation>& errors) {
  const double rounded = std::round(value);
  if (rounded < 1.0 ||
      std::abs(value - rounded) > 1e-9 * std::max(1.0, std::abs(value))) {
    errors.push_back({where, "must resolve to a whole number of IMU steps"});
    return 0;
  }
  return static_cast<int>(rounded);
}

}  // namespace

Schedule make_schedule(const ExperimentConfig& config) {
  std::vector<ConfigViolation> errors;
  Schedule s;
  s.dt = 1.0 / config.noise.imu_rate;
  s.steps = whole_ratio(config.trajectory.duration * config.noise.imu_rate,
                        "trajectory.duration", errors);
  s.steps_range = whole_ratio(config.noise.imu_rate / config.noise.range_rate,
                              "noise.range_rate", errors);
  s.steps_rmi = whole_ratio(config.noise.imu_rate * config.noise.rmi_period,
                            "noise.rmi_period", errors);
  if (!errors.empty()) {
    std::ostringstream os;
    os << "schedule invalid";
    for (const auto& v : errors) os << "\n  " << v.where << ": " << v.what;
    throw ConfigError(os.str(), errors);
  }
  return s;
}

Mat15 initial_covariance(const ExperimentConfig& config) {
  double amp_g = 0.0;
  double amp_a = 0.0;
  bias_draw_amplitudes(config, amp_g, amp_a);
  // Uniform on [-a, a] has variance a^2/3; the relative accel bias stacks
  // two independent draws.
  const double sigma_gb =
      config.init.sigma_bias_gyro > 0.0
          ? config.init.sigma_bias_gyro
          : std::max(amp_g / std::sqrt(3.0), 1e-12);
  const double sigma_ab =
      config.init.sigma_bias_accel > 0.0
          ? config.init.sigma_bias_accel
          : std::max(amp_a * std::sqrt(2.0 / 3.0), 1e-12);
  Mat15 P0 = Mat15::Zero();
  P0.block<3, 3>(0, 0) =
      config.init.sigma_att * config.init.sigma_att * Mat3::Identity();
  P0.block<3, 3>(3, 3) =
      config.init.sigma_vel * config.init.sigma_vel * Mat3::Identity();
  P0.block<3, 3>(6, 6) =
      config.init.sigma_pos * config.init.sigma_pos * Mat3::Identity();
  P0.block<3, 3>(9, 9) = sigma_gb * sigma_gb * Mat3::Identity();
  P0.block<3, 3>(12, 12) = sigma_ab * sigma_ab * Mat3::Identity();
  return P0;
}

// Draw order is fixed so a seed fully determines the trial: trajectory
// jitter, initial true biases (gyro 0, accel 0, gyro i, accel i), initial
// pose error, then per step: neighbour bias estimate at window starts, IMU
// noises (robot 0 then i), bias random-walk increments, range noises at
// ranging epochs.
TrialData make_trial_data(const ExperimentConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  TrialData data;
  data.sched = make_schedule(config);
  data.traj = config.trajectory;
  if (config.trajectory.seed_jitter) {
    data.traj = jitter_trajectory(data.traj, rng);
  }

  const Schedule& sc = data.sched;
  const NoiseParams& noise = config.noise;

  double amp_g = 0.0;
  double amp_a = 0.0;
  bias_draw_amplitudes(config, amp_g, amp_a);

  Vec3 bg0 = rng.uniform_vec3(amp_g);
  Vec3 ba0 = rng.uniform_vec3(amp_a);
  Vec3 bgi = rng.uniform_vec3(amp_g);
  Vec3 bai = rng.uniform_vec3(amp_a);

  TruthRecord rec;
  rec.t = 0.0;
  {
    const RobotKinematics k0 = analytic_state(data.traj, 0, 0.0);
    const RobotKinematics ki = analytic_state(data.traj, 1, 0.0);
    rec.X0.C = k0.C;
    rec.X0.v = k0.v;
    rec.X0.r = k0.r;
    rec.Xi.C = ki.C;
    rec.Xi.v = ki.v;
    rec.Xi.r = ki.r;
  }
  rec.bias_gyro_0 = bg0;
  rec.bias_accel_0 = ba0;
  rec.bias_gyro_i = bgi;
  rec.bias_accel_i = bai;
  data.truth.reserve(sc.steps + 1);
  data.truth.push_back(rec);

  // Estimator starts at zero bias; the pose estimate is drawn around the
  // truth with the configured sigmas.
  Vec9 e;
  e.segment<3>(0) = rng.gaussian_vec3(config.init.sigma_att);
  e.segment<3>(3) = rng.gaussian_vec3(config.init.sigma_vel);
  e.segment<3>(6) = rng.gaussian_vec3(config.init.sigma_pos);
  data.T0_est = rec.relative() * se23_exp(-e);
  data.P0 = initial_covariance(config);

  const int nwin = sc.steps / sc.steps_rmi;
  data.neighbour_bias_estimates.reserve(nwin);
  data.imu0.reserve(sc.steps);
  data.imui.reserve(sc.steps);

  ExtendedPose X0 = rec.X0;
  ExtendedPose Xi = rec.Xi;
  for (int j = 0; j < sc.steps; ++j) {
    const double t = j * sc.dt;
    if (j % sc.steps_rmi == 0 && j / sc.steps_rmi < nwin) {
      data.neighbour_bias_estimates.push_back(
          bgi + rng.gaussian_vec3(noise.sigma_neighbour_bias));
    }

    const RobotKinematics k0 = analytic_state(data.traj, 0, t);
    const RobotKinematics ki = analytic_state(data.traj, 1, t);
    ImuSample u0;
    u0.t = t;
    u0.gyro = k0.omega + bg0 + rng.gaussian_vec3(noise.sigma_gyro);
    u0.accel = k0.accel + ba0 + rng.gaussian_vec3(noise.sigma_accel);
    ImuSample ui;
    ui.t = t;
    ui.gyro = ki.omega + bgi + rng.gaussian_vec3(noise.sigma_gyro);
    ui.accel = ki.accel + bai + rng.gaussian_vec3(noise.sigma_accel);
    data.imu0.push_back(u0);
    data.imui.push_back(ui);

    // Truth follows the zero-order-hold rates the IMUs sample, so the model
    // mismatch seen by the filter is exactly the injected noise and bias.
    X0 = X0 * make_b(k0.omega, k0.accel, Vec3::Zero(), Vec3::Zero(), sc.dt);
    Xi = Xi * make_b(ki.omega, ki.accel, Vec3::Zero(), Vec3::Zero(), sc.dt);

    if (!config.constant_biases) {
      bg0 += sc.dt * rng.gaussian_vec3(noise.sigma_gyro_rw);
      ba0 += sc.dt * rng.gaussian_vec3(noise.sigma_accel_rw);
      bgi += sc.dt * rng.gaussian_vec3(noise.sigma_gyro_rw);
      bai += sc.dt * rng.gaussian_vec3(noise.sigma_accel_rw);
    }

    TruthRecord next;
    next.t = (j + 1) * sc.dt;
    next.X0 = X0;
    next.Xi = Xi;
    next.bias_gyro_0 = bg0;
    next.bias_accel_0 = ba0;
    next.bias_gyro_i = bgi;
    next.bias_accel_i = bai;
    data.truth.push_back(next);

    const int s = j + 1;
    if (s % sc.steps_range == 0) {
      std::vector<RangeMeasurement> epoch;
      for (const Vec3& tag0 : config.tags_0) {
        for (const Vec3& tagi : config.tags_i) {
          const Vec3 p0 = X0.C * tag0 + X0.r;
          const Vec3 pi = Xi.C * tagi + Xi.r;
          RangeMeasurement z;
          z.t = s * sc.dt;
          z.range = (pi - p0).norm() + noise.sigma_range * rng.gaussian();
          z.tag0 = tag0;
          z.tagi = tagi;
          z.sigma = noise.sigma_range;
          epoch.push_back(z);
        }
      }
      data.ranges.push_back(std::move(epoch));
    }
  }
  return data;
}

std::vector<Rmi> build_rmis(const TrialData& data, const NoiseParams& noise) {
  const int m = data.sched.steps_rmi;
  const int nwin = data.sched.steps / m;
  const Mat3 bias_cov = noise.sigma_neighbour_bias *
                        noise.sigma_neighbour_bias * Mat3::Identity();
  std::vector<Rmi> rmis;
  rmis.reserve(nwin);
  for (int w = 0; w < nwin; ++w) {
    Rmi rmi = Rmi::Begin(w * m);
    for (int j = w * m; j < (w + 1) * m; ++j) {
      rmi = rmi_append(rmi, data.imui[j], data.neighbour_bias_estimates[w],
                       bias_cov, noise, data.sched.dt);
    }
    rmis.push_back(rmi);
  }
  return rmis;
}

FilterRun run_filter(const ExperimentConfig& config, const TrialData& data,
                     const std::vector<Rmi>& rmis, bool estimate_biases) {
  const Schedule& sc = data.sched;

  FilterState x;
  x.T = data.T0_est;
  x.bias_gyro = data.bias_gyro0_est;
  x.bias_accel_rel = data.bias_accel_rel0_est;
  x.P = data.P0;
  x.options.estimate_biases = estimate_biases;
  x.options.gate_ranges = config.range_gate;
  if (!estimate_biases) {
    x.bias_gyro.setZero();
    x.bias_accel_rel.setZero();
    x.P.block<6, 6>(9, 9).setZero();
    x.P.block<9, 6>(0, 9).setZero();
    x.P.block<6, 9>(9, 0).setZero();
  }

  FilterRun run;

  const auto truth_at = [&](int s) {
    TruthState tr;
    tr.T = data.truth[s].relative();
    tr.bias_gyro = data.truth[s].bias_gyro_0;
    tr.bias_accel_rel = data.truth[s].bias_accel_rel();
    return tr;
  };
  // Between communications the estimate references the neighbour's pose at
  // the window start; score rows against that lagged truth.
  const auto lagged_truth_at = [&](int s) {
    if (s % sc.steps_rmi == 0) return truth_at(s);
    const int w0 = (s / sc.steps_rmi) * sc.steps_rmi;
    TruthState tr;
    tr.T = data.truth[s].X0.inverse() * data.truth[w0].Xi;
    tr.bias_gyro = data.truth[s].bias_gyro_0;
    tr.bias_accel_rel = data.truth[s].bias_accel_0 -
                        data.truth[w0].relative().C *
                            data.truth[s].bias_accel_i;
    return tr;
  };
  const auto record_row = [&](int s) {
    if (s % config.log.decimate != 0) return;
    EstimateRow row;
    row.t = s * sc.dt;
    row.T = x.T;
    row.bias_gyro = x.bias_gyro;
    row.bias_accel_rel = x.bias_accel_rel;
    row.p_diag = x.P.diagonal();
    const int w0 = (s / sc.steps_rmi) * sc.steps_rmi;
    row.nees_value = data.has_truth(s) && data.has_truth(w0)
                         ? nees(x, lagged_truth_at(s))
                         : std::numeric_limits<double>::quiet_NaN();
    run.rows.push_back(row);
  };

  record_row(0);

  double sq_err = 0.0;
  int epochs = 0;
  int next_range = 0;
  for (int j = 0; j < sc.steps; ++j) {
    const int s = j + 1;
    const bool closes = s % sc.steps_rmi == 0;
    if (closes) {
      x = update_on_rmi(x, data.imu0[j], rmis[s / sc.steps_rmi - 1],
                        config.noise, sc.dt);
    } else {
      x = predict_no_comm(x, data.imu0[j], config.noise, sc.dt);
    }

    if (s % sc.steps_range == 0 &&
        next_range < static_cast<int>(data.ranges.size())) {
      for (const RangeMeasurement& z : data.ranges[next_range]) {
        const RangeUpdateResult res = range_update(x, z);
        x = res.state;
        if (res.applied) {
          ++run.ranges_applied;
        } else if (res.nis > 0.0) {
          ++run.ranges_gated;
        } else {
          ++run.ranges_skipped;
        }
      }
      ++next_range;
    }

    if (closes && data.has_truth(s)) {
      const TruthState tr = truth_at(s);
      NeesSample sample;
      sample.t = s * sc.dt;
      sample.value = nees(x, tr);
      run.nees_epochs.push_back(sample);
      if (!std::isfinite(sample.value) || sample.value > 1e4) {
        run.diverged = true;
      }
      sq_err += (x.T.r - tr.T.r).squaredNorm();
      ++epochs;
    }

    record_row(s);
  }

  run.rmse_pos = epochs > 0 ? std::sqrt(sq_err / epochs) : 0.0;
  return run;
}

TrialResult run_trial(const ExperimentConfig& config, int trial_index) {
  TrialResult out;
  out.data = make_trial_data(
      config, derive_seed(config.seed, static_cast<std::uint64_t>(trial_index)));
  const std::vector<Rmi> rmis = build_rmis(out.data, config.noise);
  out.primary = run_filter(config, out.data, rmis, config.bias_estimation);
  if (config.compare_bias) {
    out.baseline = run_filter(config, out.data, rmis, false);
  }
  return out;
}

}  // namespace relnav
