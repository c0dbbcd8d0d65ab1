#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relnav/config.hpp"
#include "relnav/experiment.hpp"
#include "relnav/selftest.hpp"

namespace {

// Exit codes: 0 success, 1 usage or config error, 2 divergence (or selftest
// failure), 3 I/O or runtime failure.
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kDivergence = 2;
constexpr int kIoError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bias-aware multi-robot relative pose estimation experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string log_path;
  std::vector<std::string> overrides;
  int trials = 0;
  std::uint64_t seed = 0;
  bool compare = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")->required();
    cmd->add_option("--set", overrides,
                    "override a config field, key=value (repeatable; value "
                    "parsed as JSON, else taken as a string)");
  };

  CLI::App* sim =
      app.add_subcommand("simulate", "run Monte Carlo simulation trials");
  add_common(sim);
  sim->add_option("--trials", trials, "override the trial count");
  sim->add_option("--seed", seed, "override the master seed");
  sim->add_flag("--compare-bias", compare,
                "also run the estimator with bias estimation off");

  CLI::App* rep = app.add_subcommand(
      "replay", "re-run the estimator on a recorded event log");
  add_common(rep);
  rep->add_option("--log", log_path, "event log CSV")->required();

  CLI::App* self = app.add_subcommand(
      "selftest", "run the numerical cross-check suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (self->parsed()) {
    return relnav::run_selftest(std::cout) ? kOk : kDivergence;
  }

  relnav::ExperimentConfig config;
  try {
    config = relnav::load_config(config_path, overrides);
  } catch (const relnav::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  }

  if (sim->parsed()) {
    if (sim->count("--trials") > 0) {
      if (trials < 1) {
        std::cerr << "--trials must be >= 1\n";
        return kConfigError;
      }
      config.trials = trials;
    }
    if (sim->count("--seed") > 0) config.seed = seed;
    if (compare) config.compare_bias = true;
    config.mode = "simulate";
  } else {
    config.mode = "replay";
  }
  if (const char* env = std::getenv("RELNAV_OUTPUT_DIR")) {
    config.output_dir = env;
  }

  try {
    if (sim->parsed()) {
      return run_experiment(config, std::cout);
    }
    return run_replay(config, log_path, std::cout);
  } catch (const relnav::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}
