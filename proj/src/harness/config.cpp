#include "aircomp/harness/config.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace aircomp::harness {

using nlohmann::json;

std::string to_string(FunctionKind k) {
  switch (k) {
    case FunctionKind::sum: return "sum";
    case FunctionKind::mean: return "mean";
    case FunctionKind::geometric_mean: return "geometric_mean";
    case FunctionKind::weighted_mean: return "weighted_mean";
    case FunctionKind::count: return "count";
    case FunctionKind::variance: return "variance";
    case FunctionKind::regression: return "regression";
    case FunctionKind::max: return "max";
    case FunctionKind::min: return "min";
    case FunctionKind::percentile: return "percentile";
  }
  return "?";
}

FunctionKind function_from_string(const std::string& name) {
  static const std::pair<std::string_view, FunctionKind> table[] = {
      {"sum", FunctionKind::sum},
      {"mean", FunctionKind::mean},
      {"geometric_mean", FunctionKind::geometric_mean},
      {"weighted_mean", FunctionKind::weighted_mean},
      {"count", FunctionKind::count},
      {"variance", FunctionKind::variance},
      {"regression", FunctionKind::regression},
      {"max", FunctionKind::max},
      {"min", FunctionKind::min},
      {"percentile", FunctionKind::percentile},
  };
  for (const auto& [n, k] : table)
    if (n == name) return k;
  throw ConfigError("config: unknown function kind '" + name + "'");
}

namespace {

void expect_keys(const json& j, const std::string& where,
                 std::initializer_list<std::string_view> allowed) {
  if (!j.is_object())
    throw ConfigError("config: " + where + " must be an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (auto a : allowed)
      if (item.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError("config: unknown key '" + item.key() + "' in " +
                        where);
  }
}

template <typename T>
T get_field(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

std::vector<double> get_real_list(const json& j, const std::string& key,
                                  std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  try {
    if (v.is_array()) return v.get<std::vector<double>>();
    return {v.get<double>()};
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

std::vector<int> get_int_list(const json& j, const std::string& key,
                              std::vector<int> fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  try {
    if (v.is_array()) return v.get<std::vector<int>>();
    return {v.get<int>()};
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

void parse_function(const json& j, FunctionRequest& f) {
  expect_keys(j, "function",
              {"kind", "predicate", "weights", "normalize_weights",
               "percentile_rank", "prior", "measure_n", "log_floor"});
  if (!j.contains("kind"))
    throw ConfigError("config: function requires 'kind'");
  f.kind = function_from_string(get_field<std::string>(j, "kind", "sum"));
  if (j.contains("predicate")) {
    const json& p = j.at("predicate");
    expect_keys(p, "function.predicate", {"lo", "hi"});
    f.predicate.lo = get_field<double>(p, "lo", f.predicate.lo);
    f.predicate.hi = get_field<double>(p, "hi", f.predicate.hi);
    if (!(f.predicate.lo < f.predicate.hi))
      throw ConfigError("config: predicate lo must be below hi");
  }
  f.weights = get_real_list(j, "weights", f.weights);
  f.normalize_weights =
      get_field<bool>(j, "normalize_weights", f.normalize_weights);
  f.percentile_rank =
      get_field<double>(j, "percentile_rank", f.percentile_rank);
  if (!(f.percentile_rank >= 0.0 && f.percentile_rank <= 1.0))
    throw ConfigError("config: percentile_rank must lie in [0,1]");
  std::string prior = get_field<std::string>(j, "prior", "uniform");
  if (prior == "uniform")
    f.prior = bitagg::PercentilePrior::uniform;
  else if (prior == "none")
    f.prior = bitagg::PercentilePrior::none;
  else
    throw ConfigError("config: prior must be 'uniform' or 'none'");
  f.measure_n = get_field<bool>(j, "measure_n", f.measure_n);
  f.log_floor = get_field<double>(j, "log_floor", f.log_floor);
  if (!(f.log_floor > 0.0))
    throw ConfigError("config: log_floor must be positive");
}

void parse_channel(const json& j, ChannelModelConfig& c) {
  expect_keys(j, "channel", {"kind", "magnitude_floor", "phase_drift_std"});
  std::string kind = get_field<std::string>(j, "kind", "unit_modulus");
  if (kind == "unit_modulus")
    c.kind = ChannelKind::unit_modulus;
  else if (kind == "rayleigh_clipped")
    c.kind = ChannelKind::rayleigh_clipped;
  else
    throw ConfigError("config: unknown channel kind '" + kind + "'");
  c.magnitude_floor = get_field<double>(j, "magnitude_floor", c.magnitude_floor);
  if (!(c.magnitude_floor > 0.0))
    throw ConfigError("config: magnitude_floor must be positive");
  c.phase_drift_std = get_field<double>(j, "phase_drift_std", c.phase_drift_std);
  if (c.phase_drift_std < 0.0)
    throw ConfigError("config: phase_drift_std must be >= 0");
}

void parse_detection(const json& j, phy::DetectionConfig& d) {
  expect_keys(j, "detection", {"slot_samples", "false_alarm_target"});
  d.slot_samples = get_field<int>(j, "slot_samples", d.slot_samples);
  if (d.slot_samples < 1)
    throw ConfigError("config: slot_samples must be >= 1");
  d.false_alarm_target =
      get_field<double>(j, "false_alarm_target", d.false_alarm_target);
  if (!(d.false_alarm_target > 0.0 && d.false_alarm_target < 1.0))
    throw ConfigError("config: false_alarm_target must lie in (0,1)");
}

void parse_baseline(const json& j, planner::BaselineModel& b) {
  expect_keys(j, "baseline",
              {"bits_per_measurement", "link_rate_bps", "bandwidth_hz"});
  b.bits_per_measurement =
      get_field<int>(j, "bits_per_measurement", b.bits_per_measurement);
  b.link_rate_bps = get_field<double>(j, "link_rate_bps", b.link_rate_bps);
  b.bandwidth_hz = get_field<double>(j, "bandwidth_hz", b.bandwidth_hz);
  if (b.bits_per_measurement < 1 || !(b.link_rate_bps > 0.0) ||
      !(b.bandwidth_hz > 0.0))
    throw ConfigError("config: baseline parameters must be positive");
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }

  expect_keys(j, "top level",
              {"n", "snr_db", "bits", "full_scale", "channel", "detection",
               "baseline", "request_overhead_samples", "function", "trials",
               "seed", "out", "m1", "m2", "running_depth"});

  ScenarioConfig cfg;
  cfg.n_values = get_int_list(j, "n", cfg.n_values);
  if (cfg.n_values.empty())
    throw ConfigError("config: 'n' must list at least one cluster size");
  for (int n : cfg.n_values)
    if (n < 1) throw ConfigError("config: 'n' entries must be >= 1");

  cfg.snr_db_values = get_real_list(j, "snr_db", cfg.snr_db_values);
  if (cfg.snr_db_values.empty())
    throw ConfigError("config: 'snr_db' must list at least one value");

  cfg.bits = get_field<int>(j, "bits", cfg.bits);
  if (cfg.bits < 1 || cfg.bits > 24)
    throw ConfigError("config: 'bits' must lie in [1,24]");

  cfg.full_scale = get_field<double>(j, "full_scale", cfg.full_scale);
  if (!(cfg.full_scale > 0.0))
    throw ConfigError("config: 'full_scale' must be positive");

  if (j.contains("channel")) parse_channel(j.at("channel"), cfg.channel);
  if (j.contains("detection")) parse_detection(j.at("detection"), cfg.detection);
  if (j.contains("baseline")) parse_baseline(j.at("baseline"), cfg.baseline);

  cfg.request_overhead_samples =
      get_field<int>(j, "request_overhead_samples", 0);
  if (cfg.request_overhead_samples < 0)
    throw ConfigError("config: request_overhead_samples must be >= 0");

  if (j.contains("function")) parse_function(j.at("function"), cfg.function);

  cfg.trials = get_field<int>(j, "trials", cfg.trials);
  if (cfg.trials < 1) throw ConfigError("config: 'trials' must be >= 1");

  cfg.seed = get_field<std::uint64_t>(j, "seed", cfg.seed);
  cfg.out = get_field<std::string>(j, "out", cfg.out);

  cfg.m1_override = get_field<std::int64_t>(j, "m1", cfg.m1_override);
  cfg.m2_override = get_field<std::int64_t>(j, "m2", cfg.m2_override);
  if (cfg.m1_override < 0 || cfg.m2_override < 0)
    throw ConfigError("config: m1/m2 overrides must be >= 0");

  cfg.running_depth = get_field<int>(j, "running_depth", cfg.running_depth);
  if (cfg.running_depth < 0)
    throw ConfigError("config: running_depth must be >= 0");
  if (cfg.running_depth > 0 && cfg.function.kind != FunctionKind::sum)
    throw ConfigError("config: running_depth only applies to sum");

  if (!cfg.function.weights.empty()) {
    if (cfg.function.kind != FunctionKind::weighted_mean)
      throw ConfigError("config: weights only apply to weighted_mean");
    for (int n : cfg.n_values)
      if (cfg.function.weights.size() != static_cast<std::size_t>(n))
        throw ConfigError("config: weights length must equal n");
  }

  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace aircomp::harness
