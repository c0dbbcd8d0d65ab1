#include "relnav/config.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace relnav {

using nlohmann::json;

namespace {

std::string format_message(const std::string& summary,
                           const std::vector<ConfigViolation>& violations) {
  std::ostringstream os;
  os << summary;
  for (const auto& v : violations) {
    os << "\n  " << v.where << ": " << v.what;
  }
  return os.str();
}

class Extractor {
 public:
  std::vector<ConfigViolation> errors;

  void unknown_keys(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (allowed.find(it.key()) == allowed.end()) {
        errors.push_back({where.empty() ? it.key() : where + "." + it.key(),
                          "unknown key"});
      }
    }
  }

  template <typename Pred>
  void number(const json& obj, const std::string& where, const char* key,
              double& out, Pred pred, const char* requirement) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    const std::string path = where + key;
    if (!v.is_number()) {
      errors.push_back({path, "expected a number"});
      return;
    }
    const double d = v.get<double>();
    if (!pred(d)) {
      errors.push_back({path, requirement});
      return;
    }
    out = d;
  }

  void integer(const json& obj, const std::string& where, const char* key,
               int& out, int min, const char* requirement) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    const std::string path = where + key;
    if (!v.is_number_integer()) {
      errors.push_back({path, "expected an integer"});
      return;
    }
    const auto i = v.get<std::int64_t>();
    if (i < min || i > std::numeric_limits<int>::max()) {
      errors.push_back({path, requirement});
      return;
    }
    out = static_cast<int>(i);
  }

  void seed(const json& obj, const std::string& where, const char* key,
            std::uint64_t& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      errors.push_back({where + key, "expected a non-negative integer"});
      return;
    }
    out = v.get<std::uint64_t>();
  }

  void boolean(const json& obj, const std::string& where, const char* key,
               bool& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      errors.push_back({where + key, "expected a boolean"});
      return;
    }
    out = v.get<bool>();
  }

  void text(const json& obj, const std::string& where, const char* key,
            std::string& out, const std::set<std::string>& allowed = {}) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    const std::string path = where + key;
    if (!v.is_string()) {
      errors.push_back({path, "expected a string"});
      return;
    }
    const std::string s = v.get<std::string>();
    if (!allowed.empty() && allowed.find(s) == allowed.end()) {
      std::string opts = "expected one of:";
      for (const auto& a : allowed) opts += " " + a;
      errors.push_back({path, opts});
      return;
    }
    if (s.empty()) {
      errors.push_back({path, "must not be empty"});
      return;
    }
    out = s;
  }

  bool vec3_value(const json& v, const std::string& path, Vec3& out) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
        !v[1].is_number() || !v[2].is_number()) {
      errors.push_back({path, "expected an array of 3 numbers"});
      return false;
    }
    out = Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    return true;
  }

  void vec3(const json& obj, const std::string& where, const char* key,
            Vec3& out) {
    if (!obj.contains(key)) return;
    vec3_value(obj.at(key), where + key, out);
  }

  template <typename Pred>
  void vec3_each(const json& obj, const std::string& where, const char* key,
                 Vec3& out, Pred pred, const char* requirement) {
    if (!obj.contains(key)) return;
    Vec3 v = out;
    if (!vec3_value(obj.at(key), where + key, v)) return;
    for (int k = 0; k < 3; ++k) {
      if (!pred(v[k])) {
        errors.push_back({where + key, requirement});
        return;
      }
    }
    out = v;
  }

  void tag_list(const json& obj, const std::string& where, const char* key,
                std::vector<Vec3>& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    const std::string path = where + key;
    if (!v.is_array() || v.empty()) {
      errors.push_back({path, "expected a non-empty array of 3-vectors"});
      return;
    }
    std::vector<Vec3> tags;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Vec3 tag;
      if (!vec3_value(v[i], path + "[" + std::to_string(i) + "]", tag)) {
        return;
      }
      tags.push_back(tag);
    }
    out = tags;
  }
};

const auto positive = [](double v) { return v > 0.0; };
const auto non_negative = [](double v) { return v >= 0.0; };
const auto sigma_or_auto = [](double v) { return v > 0.0 || v == -1.0; };
const auto unit_fraction = [](double v) { return v >= 0.0 && v < 1.0; };

void extract_path(Extractor& ex, const json& obj, const std::string& where,
                  PathSpec& out) {
  ex.unknown_keys(obj, where.substr(0, where.size() - 1),
                  {"center", "radius", "period", "phase",
                   "lissajous_amplitude", "lissajous_period",
                   "lissajous_phase"});
  ex.vec3(obj, where, "center", out.center);
  ex.number(obj, where, "radius", out.radius, non_negative, "must be >= 0");
  ex.number(obj, where, "period", out.period, positive, "must be > 0");
  ex.number(obj, where, "phase", out.phase, [](double) { return true; }, "");
  ex.vec3(obj, where, "lissajous_amplitude", out.lissajous_amplitude);
  ex.vec3_each(obj, where, "lissajous_period", out.lissajous_period, positive,
               "periods must be > 0");
  ex.vec3(obj, where, "lissajous_phase", out.lissajous_phase);
}

void extract_trajectory(Extractor& ex, const json& obj,
                        TrajectoryParams& out) {
  ex.unknown_keys(obj, "trajectory",
                  {"kind", "duration", "seed_jitter", "relative_attitude",
                   "robot0", "roboti", "attitude0", "relative_wobble"});
  ex.text(obj, "trajectory.", "kind", out.kind,
          {"circular", "lissajous", "static"});
  ex.number(obj, "trajectory.", "duration", out.duration, positive,
            "must be > 0");
  ex.boolean(obj, "trajectory.", "seed_jitter", out.seed_jitter);
  ex.vec3(obj, "trajectory.", "relative_attitude", out.relative_attitude);
  if (obj.contains("robot0")) {
    if (!obj.at("robot0").is_object()) {
      ex.errors.push_back({"trajectory.robot0", "expected an object"});
    } else {
      extract_path(ex, obj.at("robot0"), "trajectory.robot0.", out.robot0);
    }
  }
  if (obj.contains("roboti")) {
    if (!obj.at("roboti").is_object()) {
      ex.errors.push_back({"trajectory.roboti", "expected an object"});
    } else {
      extract_path(ex, obj.at("roboti"), "trajectory.roboti.", out.roboti);
    }
  }
  const auto attitude_block = [&](const char* key, AttitudeSpec& spec) {
    if (!obj.contains(key)) return;
    const json& att = obj.at(key);
    const std::string where = std::string("trajectory.") + key;
    if (!att.is_object()) {
      ex.errors.push_back({where, "expected an object"});
      return;
    }
    ex.unknown_keys(att, where, {"amplitude", "period", "phase"});
    ex.vec3(att, where + ".", "amplitude", spec.amplitude);
    ex.vec3_each(att, where + ".", "period", spec.period, positive,
                 "periods must be > 0");
    ex.vec3(att, where + ".", "phase", spec.phase);
  };
  attitude_block("attitude0", out.attitude0);
  attitude_block("relative_wobble", out.relative_wobble);
}

void extract_noise(Extractor& ex, const json& obj, NoiseParams& out) {
  ex.unknown_keys(obj, "noise",
                  {"sigma_gyro", "sigma_accel", "sigma_gyro_rw",
                   "sigma_accel_rw", "sigma_range", "sigma_neighbour_bias",
                   "imu_rate", "range_rate", "rmi_period"});
  ex.number(obj, "noise.", "sigma_gyro", out.sigma_gyro, non_negative,
            "must be >= 0");
  ex.number(obj, "noise.", "sigma_accel", out.sigma_accel, non_negative,
            "must be >= 0");
  ex.number(obj, "noise.", "sigma_gyro_rw", out.sigma_gyro_rw, non_negative,
            "must be >= 0");
  ex.number(obj, "noise.", "sigma_accel_rw", out.sigma_accel_rw, non_negative,
            "must be >= 0");
  ex.number(obj, "noise.", "sigma_range", out.sigma_range, non_negative,
            "must be >= 0");
  ex.number(obj, "noise.", "sigma_neighbour_bias", out.sigma_neighbour_bias,
            non_negative, "must be >= 0");
  ex.number(obj, "noise.", "imu_rate", out.imu_rate, positive, "must be > 0");
  ex.number(obj, "noise.", "range_rate", out.range_rate, positive,
            "must be > 0");
  ex.number(obj, "noise.", "rmi_period", out.rmi_period, positive,
            "must be > 0");
}

ExperimentConfig extract(const json& doc) {
  Extractor ex;
  ExperimentConfig cfg = default_config();

  if (!doc.is_object()) {
    throw ConfigError(format_message("configuration invalid",
                                     {{"(root)", "expected a JSON object"}}),
                      {{"(root)", "expected a JSON object"}});
  }

  ex.unknown_keys(doc, "",
                  {"mode", "seed", "trials", "output_dir", "bias_estimation",
                   "compare_bias", "constant_biases", "initial_bias_scale",
                   "nees_transient_fraction", "range_gate", "trajectory",
                   "noise", "init", "comparison", "log", "tags_0", "tags_i"});

  ex.text(doc, "", "mode", cfg.mode, {"simulate", "replay"});
  ex.seed(doc, "", "seed", cfg.seed);
  ex.integer(doc, "", "trials", cfg.trials, 1, "must be >= 1");
  ex.text(doc, "", "output_dir", cfg.output_dir);
  ex.boolean(doc, "", "bias_estimation", cfg.bias_estimation);
  ex.boolean(doc, "", "compare_bias", cfg.compare_bias);
  ex.boolean(doc, "", "constant_biases", cfg.constant_biases);
  ex.number(doc, "", "initial_bias_scale", cfg.initial_bias_scale,
            non_negative, "must be >= 0");
  ex.number(doc, "", "nees_transient_fraction", cfg.nees_transient_fraction,
            unit_fraction, "must be in [0, 1)");
  ex.boolean(doc, "", "range_gate", cfg.range_gate);

  if (doc.contains("trajectory")) {
    if (!doc.at("trajectory").is_object()) {
      ex.errors.push_back({"trajectory", "expected an object"});
    } else {
      extract_trajectory(ex, doc.at("trajectory"), cfg.trajectory);
    }
  }
  if (doc.contains("noise")) {
    if (!doc.at("noise").is_object()) {
      ex.errors.push_back({"noise", "expected an object"});
    } else {
      extract_noise(ex, doc.at("noise"), cfg.noise);
    }
  }
  if (doc.contains("init")) {
    const json& obj = doc.at("init");
    if (!obj.is_object()) {
      ex.errors.push_back({"init", "expected an object"});
    } else {
      ex.unknown_keys(obj, "init",
                      {"sigma_att", "sigma_vel", "sigma_pos",
                       "sigma_bias_gyro", "sigma_bias_accel"});
      ex.number(obj, "init.", "sigma_att", cfg.init.sigma_att, positive,
                "must be > 0");
      ex.number(obj, "init.", "sigma_vel", cfg.init.sigma_vel, positive,
                "must be > 0");
      ex.number(obj, "init.", "sigma_pos", cfg.init.sigma_pos, positive,
                "must be > 0");
      ex.number(obj, "init.", "sigma_bias_gyro", cfg.init.sigma_bias_gyro,
                sigma_or_auto, "must be > 0, or -1 to match the bias draw");
      ex.number(obj, "init.", "sigma_bias_accel", cfg.init.sigma_bias_accel,
                sigma_or_auto, "must be > 0, or -1 to match the bias draw");
    }
  }
  if (doc.contains("comparison")) {
    const json& obj = doc.at("comparison");
    if (!obj.is_object()) {
      ex.errors.push_back({"comparison", "expected an object"});
    } else {
      ex.unknown_keys(obj, "comparison", {"bias_gyro", "bias_accel"});
      ex.number(obj, "comparison.", "bias_gyro", cfg.comparison.bias_gyro,
                non_negative, "must be >= 0");
      ex.number(obj, "comparison.", "bias_accel", cfg.comparison.bias_accel,
                non_negative, "must be >= 0");
    }
  }
  if (doc.contains("log")) {
    const json& obj = doc.at("log");
    if (!obj.is_object()) {
      ex.errors.push_back({"log", "expected an object"});
    } else {
      ex.unknown_keys(obj, "log", {"decimate", "truth", "estimates", "events"});
      ex.integer(obj, "log.", "decimate", cfg.log.decimate, 1, "must be >= 1");
      ex.boolean(obj, "log.", "truth", cfg.log.truth);
      ex.boolean(obj, "log.", "estimates", cfg.log.estimates);
      ex.boolean(obj, "log.", "events", cfg.log.events);
    }
  }
  ex.tag_list(doc, "", "tags_0", cfg.tags_0);
  ex.tag_list(doc, "", "tags_i", cfg.tags_i);

  if (!ex.errors.empty()) {
    throw ConfigError(format_message("configuration invalid", ex.errors),
                      ex.errors);
  }
  return cfg;
}

json apply_overrides(json doc, const std::vector<std::string>& overrides) {
  std::vector<ConfigViolation> errors;
  for (const auto& entry : overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      errors.push_back({entry, "override must have the form key=value"});
      continue;
    }
    std::string key = entry.substr(0, eq);
    const std::string value = entry.substr(eq + 1);
    std::string pointer = "/";
    for (char ch : key) pointer += ch == '.' ? '/' : ch;
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;  // bare string
    try {
      doc[json::json_pointer(pointer)] = parsed;
    } catch (const json::exception& e) {
      errors.push_back({key, std::string("cannot apply override: ") +
                                 e.what()});
    }
  }
  if (!errors.empty()) {
    throw ConfigError(format_message("invalid --set overrides", errors),
                      errors);
  }
  return doc;
}

json vec3_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json path_json(const PathSpec& p) {
  return json{{"center", vec3_json(p.center)},
              {"radius", p.radius},
              {"period", p.period},
              {"phase", p.phase},
              {"lissajous_amplitude", vec3_json(p.lissajous_amplitude)},
              {"lissajous_period", vec3_json(p.lissajous_period)},
              {"lissajous_phase", vec3_json(p.lissajous_phase)}};
}

json attitude_json(const AttitudeSpec& a) {
  return json{{"amplitude", vec3_json(a.amplitude)},
              {"period", vec3_json(a.period)},
              {"phase", vec3_json(a.phase)}};
}

}  // namespace

ConfigError::ConfigError(std::string summary,
                         std::vector<ConfigViolation> violations)
    : std::runtime_error(std::move(summary)),
      violations_(std::move(violations)) {}

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig config_from_json_text(
    const std::string& text, const std::vector<std::string>& overrides) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    std::vector<ConfigViolation> v{{"(root)", "not valid JSON"}};
    throw ConfigError(format_message("configuration invalid", v), v);
  }
  return extract(apply_overrides(std::move(doc), overrides));
}

ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) {
    std::vector<ConfigViolation> v{{path, "cannot open config file"}};
    throw ConfigError(format_message("configuration invalid", v), v);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str(), overrides);
}

std::string resolved_config_json(const ExperimentConfig& c) {
  json tags0 = json::array();
  for (const auto& t : c.tags_0) tags0.push_back(vec3_json(t));
  json tagsi = json::array();
  for (const auto& t : c.tags_i) tagsi.push_back(vec3_json(t));

  const json doc{
      {"mode", c.mode},
      {"seed", c.seed},
      {"trials", c.trials},
      {"output_dir", c.output_dir},
      {"bias_estimation", c.bias_estimation},
      {"compare_bias", c.compare_bias},
      {"constant_biases", c.constant_biases},
      {"initial_bias_scale", c.initial_bias_scale},
      {"nees_transient_fraction", c.nees_transient_fraction},
      {"range_gate", c.range_gate},
      {"trajectory",
       json{{"kind", c.trajectory.kind},
            {"duration", c.trajectory.duration},
            {"seed_jitter", c.trajectory.seed_jitter},
            {"relative_attitude", vec3_json(c.trajectory.relative_attitude)},
            {"robot0", path_json(c.trajectory.robot0)},
            {"roboti", path_json(c.trajectory.roboti)},
            {"attitude0", attitude_json(c.trajectory.attitude0)},
            {"relative_wobble", attitude_json(c.trajectory.relative_wobble)}}},
      {"noise",
       json{{"sigma_gyro", c.noise.sigma_gyro},
            {"sigma_accel", c.noise.sigma_accel},
            {"sigma_gyro_rw", c.noise.sigma_gyro_rw},
            {"sigma_accel_rw", c.noise.sigma_accel_rw},
            {"sigma_range", c.noise.sigma_range},
            {"sigma_neighbour_bias", c.noise.sigma_neighbour_bias},
            {"imu_rate", c.noise.imu_rate},
            {"range_rate", c.noise.range_rate},
            {"rmi_period", c.noise.rmi_period}}},
      {"init",
       json{{"sigma_att", c.init.sigma_att},
            {"sigma_vel", c.init.sigma_vel},
            {"sigma_pos", c.init.sigma_pos},
            {"sigma_bias_gyro", c.init.sigma_bias_gyro},
            {"sigma_bias_accel", c.init.sigma_bias_accel}}},
      {"comparison",
       json{{"bias_gyro", c.comparison.bias_gyro},
            {"bias_accel", c.comparison.bias_accel}}},
      {"log",
       json{{"decimate", c.log.decimate},
            {"truth", c.log.truth},
            {"estimates", c.log.estimates},
            {"events", c.log.events}}},
      {"tags_0", tags0},
      {"tags_i", tagsi}};
  return doc.dump(2) + "\n";
}

}  // namespace relnav
