#include "relnav/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "relnav/logio.hpp"
#include "relnav/simulation.hpp"

namespace relnav {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool write_file(const fs::path& path,
                const std::function<void(std::ostream&)>& body,
                std::ostream& log) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    log << "error: cannot open " << path.string() << " for writing\n";
    return false;
  }
  body(os);
  os.flush();
  if (!os) {
    log << "error: write failed on " << path.string() << "\n";
    return false;
  }
  return true;
}

double mean_after(const std::vector<NeesSample>& samples, double t_min) {
  double sum = 0.0;
  int n = 0;
  for (const auto& s : samples) {
    if (s.t > t_min) {
      sum += s.value;
      ++n;
    }
  }
  return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

json run_stats(const FilterRun& run, double transient_t) {
  return json{{"rmse_pos", run.rmse_pos},
              {"nees_mean_post_transient", mean_after(run.nees_epochs,
                                                      transient_t)},
              {"diverged", run.diverged},
              {"ranges_applied", run.ranges_applied},
              {"ranges_gated", run.ranges_gated},
              {"ranges_skipped", run.ranges_skipped}};
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& out) {
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    out << "error: cannot create " << dir.string() << ": " << ec.message()
        << "\n";
    return 3;
  }
  if (!write_file(dir / "resolved_config.json",
                  [&](std::ostream& os) { os << resolved_config_json(config); },
                  out)) {
    return 3;
  }

  const double transient_t =
      config.nees_transient_fraction * config.trajectory.duration;

  std::vector<NeesCsvRow> nees_rows;
  std::vector<double> agg_sum;
  std::vector<double> agg_t;
  json trial_summaries = json::array();
  std::vector<double> rmse_with;
  std::vector<double> rmse_without;
  int diverged_trials = 0;

  for (int k = 0; k < config.trials; ++k) {
    const TrialResult res = run_trial(config, k);

    const std::string suffix = "_trial" + std::to_string(k) + ".csv";
    if (config.log.estimates) {
      if (!write_file(dir / ("estimate" + suffix),
                      [&](std::ostream& os) {
                        write_estimate_csv(os, res.primary.rows);
                      },
                      out)) {
        return 3;
      }
      if (res.baseline &&
          !write_file(dir / ("estimate_nobias" + suffix),
                      [&](std::ostream& os) {
                        write_estimate_csv(os, res.baseline->rows);
                      },
                      out)) {
        return 3;
      }
    }
    if (config.log.truth &&
        !write_file(dir / ("truth" + suffix),
                    [&](std::ostream& os) {
                      write_truth_csv(os, res.data.truth, config.log.decimate);
                    },
                    out)) {
      return 3;
    }
    if (config.log.events &&
        !write_file(dir / ("events" + suffix),
                    [&](std::ostream& os) {
                      write_event_log(
                          os, to_streams(res.data, config.log.decimate));
                    },
                    out)) {
      return 3;
    }

    if (agg_sum.empty()) {
      agg_sum.assign(res.primary.nees_epochs.size(), 0.0);
      agg_t.resize(res.primary.nees_epochs.size());
      for (std::size_t i = 0; i < agg_t.size(); ++i) {
        agg_t[i] = res.primary.nees_epochs[i].t;
      }
    }
    for (std::size_t i = 0; i < res.primary.nees_epochs.size(); ++i) {
      const NeesSample& s = res.primary.nees_epochs[i];
      nees_rows.push_back({k, s.t, s.value});
      if (i < agg_sum.size()) agg_sum[i] += s.value;
    }

    if (res.primary.diverged) ++diverged_trials;
    rmse_with.push_back(res.primary.rmse_pos);

    json entry{{"trial", k},
               {"seed", derive_seed(config.seed, static_cast<std::uint64_t>(k))},
               {"primary", run_stats(res.primary, transient_t)}};
    if (res.baseline) {
      entry["baseline"] = run_stats(*res.baseline, transient_t);
      rmse_without.push_back(res.baseline->rmse_pos);
    }
    trial_summaries.push_back(entry);

    out << "trial " << k + 1 << "/" << config.trials
        << ": rmse_pos=" << res.primary.rmse_pos;
    if (res.baseline) out << " (without bias estimation " << res.baseline->rmse_pos << ")";
    if (res.primary.diverged) out << " DIVERGED";
    out << "\n";
  }

  std::vector<NeesSample> aggregate(agg_sum.size());
  for (std::size_t i = 0; i < agg_sum.size(); ++i) {
    aggregate[i].t = agg_t[i];
    aggregate[i].value = agg_sum[i] / config.trials;
    nees_rows.push_back({-1, aggregate[i].t, aggregate[i].value});
  }
  if (!write_file(dir / "nees.csv",
                  [&](std::ostream& os) { write_nees_csv(os, nees_rows); },
                  out)) {
    return 3;
  }

  json summary{
      {"trials", config.trials},
      {"seed", config.seed},
      {"bias_estimation", config.bias_estimation},
      {"nees_dof", config.bias_estimation ? 15 : 9},
      {"transient_time", transient_t},
      {"diverged_trials", diverged_trials},
      {"avg_nees_post_transient", mean_after(aggregate, transient_t)},
      {"rmse_pos", rmse_with},
      {"trial_details", trial_summaries}};
  if (!rmse_without.empty()) {
    int improved = 0;
    double sum_fraction = 0.0;
    for (std::size_t i = 0; i < rmse_without.size(); ++i) {
      const double fraction =
          rmse_without[i] > 0.0
              ? (rmse_without[i] - rmse_with[i]) / rmse_without[i]
              : 0.0;
      sum_fraction += fraction;
      if (fraction >= 0.2) ++improved;
    }
    summary["comparison"] = json{
        {"rmse_pos_without_bias", rmse_without},
        {"mean_improvement_fraction", sum_fraction / rmse_without.size()},
        {"trials_improved_at_least_20pct", improved}};
  }
  if (!write_file(dir / "summary.json",
                  [&](std::ostream& os) { os << summary.dump(2) << "\n"; },
                  out)) {
    return 3;
  }

  out << "wrote " << (dir / "summary.json").string() << "\n";
  return diverged_trials > 0 ? 2 : 0;
}

int run_replay(const ExperimentConfig& config, const std::string& log_path,
               std::ostream& out) {
  std::ifstream is(log_path, std::ios::binary);
  if (!is) {
    out << "error: cannot open log " << log_path << "\n";
    return 3;
  }
  ReplayStreams streams;
  try {
    streams = ingest_log(is);
  } catch (const std::runtime_error& e) {
    out << "error: " << e.what() << "\n";
    return 3;
  }
  for (const auto& w : streams.warnings) out << "warning: " << w << "\n";

  TrialData data;
  data.sched = make_schedule(config);
  data.traj = config.trajectory;
  const int avail = static_cast<int>(
      std::min(streams.imu0.size(), streams.imui.size()));
  data.sched.steps = std::min(data.sched.steps, avail);
  const Schedule& sc = data.sched;
  if (sc.steps == 0) {
    out << "error: log holds no usable IMU step pairs\n";
    return 3;
  }
  data.imu0.assign(streams.imu0.begin(), streams.imu0.begin() + sc.steps);
  data.imui.assign(streams.imui.begin(), streams.imui.begin() + sc.steps);
  data.neighbour_bias_estimates.assign(
      static_cast<std::size_t>(sc.steps / sc.steps_rmi), Vec3::Zero());

  data.truth.assign(sc.steps + 1, TruthRecord{});
  data.truth_valid.assign(sc.steps + 1, 0);
  for (int s = 0; s <= sc.steps; ++s) data.truth[s].t = s * sc.dt;
  int off_grid = 0;
  for (const auto& rec : streams.truth) {
    const long s = std::lround(rec.t / sc.dt);
    if (s < 0 || s > sc.steps || std::abs(rec.t - s * sc.dt) > 1e-6) {
      ++off_grid;
      continue;
    }
    data.truth[static_cast<std::size_t>(s)] = rec;
    data.truth_valid[static_cast<std::size_t>(s)] = 1;
  }
  if (off_grid > 0) {
    out << "warning: " << off_grid
        << " truth rows off the sample grid were ignored\n";
  }

  data.ranges.assign(static_cast<std::size_t>(sc.steps / sc.steps_range), {});
  int off_epoch = 0;
  for (const auto& z : streams.ranges) {
    const long s = std::lround(z.t / sc.dt);
    if (s <= 0 || s > sc.steps || std::abs(z.t - s * sc.dt) > 1e-6 ||
        s % sc.steps_range != 0 ||
        s / sc.steps_range > static_cast<long>(data.ranges.size())) {
      ++off_epoch;
      continue;
    }
    data.ranges[static_cast<std::size_t>(s / sc.steps_range - 1)].push_back(z);
  }
  if (off_epoch > 0) {
    out << "warning: " << off_epoch
        << " range rows off the configured ranging epochs were ignored\n";
  }

  if (data.truth_valid[0]) {
    data.T0_est = data.truth[0].relative();
  } else {
    data.T0_est = ExtendedPose::Identity();
    out << "warning: no truth at t=0; starting from identity\n";
  }
  data.P0 = initial_covariance(config);

  const std::vector<Rmi> rmis = build_rmis(data, config.noise);
  const FilterRun run = run_filter(config, data, rmis, config.bias_estimation);

  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    out << "error: cannot create " << dir.string() << ": " << ec.message()
        << "\n";
    return 3;
  }
  if (!write_file(dir / "resolved_config.json",
                  [&](std::ostream& os) { os << resolved_config_json(config); },
                  out)) {
    return 3;
  }
  if (!write_file(dir / "estimate_replay.csv",
                  [&](std::ostream& os) { write_estimate_csv(os, run.rows); },
                  out)) {
    return 3;
  }
  std::vector<NeesCsvRow> nees_rows;
  for (const auto& s : run.nees_epochs) nees_rows.push_back({0, s.t, s.value});
  if (!write_file(dir / "nees_replay.csv",
                  [&](std::ostream& os) { write_nees_csv(os, nees_rows); },
                  out)) {
    return 3;
  }

  const double transient_t =
      config.nees_transient_fraction * sc.steps * sc.dt;
  json summary{{"steps", sc.steps},
               {"epochs_scored", run.nees_epochs.size()},
               {"warnings", streams.warnings.size() +
                                (off_grid > 0 ? 1u : 0u) +
                                (off_epoch > 0 ? 1u : 0u)},
               {"primary", run_stats(run, transient_t)}};
  if (!write_file(dir / "summary_replay.json",
                  [&](std::ostream& os) { os << summary.dump(2) << "\n"; },
                  out)) {
    return 3;
  }

  out << "replayed " << sc.steps << " steps; rmse_pos=" << run.rmse_pos
      << (run.diverged ? " DIVERGED" : "") << "\n";
  return run.diverged ? 2 : 0;
}

}  // namespace relnav
