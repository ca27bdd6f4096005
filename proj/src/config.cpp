#include "elmine/config.hpp"

#include <cctype>
#include <fstream>

#include <json.hpp>

#include "elmine/errors.hpp"

namespace elmine::config {

namespace {

using nlohmann::json;

std::string lower(std::string s) {
  for (char &c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> string_list(const json &v, const char *key) {
  if (!v.is_array())
    throw ConfigError(std::string(key) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto &item : v) {
    if (!item.is_string())
      throw ConfigError(std::string(key) + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

} // namespace

PipelineConfig default_config() { return PipelineConfig{}; }

int parse_weekday(const std::string &name) {
  static const char *days[7] = {"sunday",   "monday", "tuesday", "wednesday",
                                "thursday", "friday", "saturday"};
  std::string low = lower(name);
  for (int i = 0; i < 7; ++i)
    if (low == days[i])
      return i;
  throw ConfigError("unknown weekday name: " + name);
}

PipelineConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoFailure("cannot open config file: " + path);

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object())
    throw ConfigError("config root must be a JSON object");

  PipelineConfig cfg;
  try {
    for (const auto &[key, value] : doc.items()) {
      if (key == "robot_hosts")
        cfg.robot_hosts = string_list(value, "robot_hosts");
      else if (key == "robot_paths")
        cfg.robot_paths = string_list(value, "robot_paths");
      else if (key == "notes_paths")
        cfg.notes_paths = string_list(value, "notes_paths");
      else if (key == "timeout_minutes")
        cfg.timeout_minutes = value.get<std::int64_t>();
      else if (key == "campus_networks")
        cfg.campus_networks = string_list(value, "campus_networks");
      else if (key == "day_start")
        cfg.day_start = value.get<int>();
      else if (key == "day_end")
        cfg.day_end = value.get<int>();
      else if (key == "lab_weekdays")
        cfg.lab_weekdays = string_list(value, "lab_weekdays");
      else if (key == "hits_cap")
        cfg.hits_cap = value.get<double>();
      else if (key == "downloads_cap")
        cfg.downloads_cap = value.get<double>();
      else if (key == "clusters")
        cfg.clusters = value.get<std::size_t>();
      else if (key == "method")
        cfg.method = value.get<std::string>();
      else if (key == "m")
        cfg.m = value.get<double>();
      else if (key == "sigma") {
        if (value.is_null())
          cfg.sigma.reset();
        else
          cfg.sigma = value.get<double>();
      } else if (key == "eps")
        cfg.eps = value.get<double>();
      else if (key == "max_iter")
        cfg.max_iter = value.get<std::size_t>();
      else if (key == "seed")
        cfg.seed = value.get<std::uint64_t>();
      else if (key == "theta_sure")
        cfg.theta_sure = value.get<double>();
      else if (key == "theta_member")
        cfg.theta_member = value.get<double>();
      else if (key == "out_dir")
        cfg.out_dir = value.get<std::string>();
      else
        throw ConfigError("unknown config key: " + key);
    }
  } catch (const json::type_error &e) {
    throw ConfigError("config value has the wrong type: " +
                      std::string(e.what()));
  }

  validate(cfg);
  return cfg;
}

void validate(const PipelineConfig &cfg) {
  if (cfg.method != "fcm" && cfg.method != "kfcm")
    throw ConfigError("method must be \"fcm\" or \"kfcm\"");
  if (cfg.clusters < 2)
    throw ConfigError("clusters must be at least 2");
  if (cfg.m <= 1.0)
    throw ConfigError("fuzzifier m must exceed 1");
  if (cfg.eps <= 0.0)
    throw ConfigError("eps must be positive");
  if (cfg.max_iter == 0)
    throw ConfigError("max_iter must be positive");
  if (cfg.timeout_minutes <= 0)
    throw ConfigError("timeout_minutes must be positive");
  if (cfg.day_start < 0 || cfg.day_start >= cfg.day_end || cfg.day_end > 24)
    throw ConfigError("daytime window must satisfy 0 <= start < end <= 24");
  if (cfg.sigma && *cfg.sigma <= 0.0)
    throw ConfigError("sigma must be positive");
  if (cfg.hits_cap < 0.0 || cfg.downloads_cap < 0.0)
    throw ConfigError("feature caps must not be negative");
  for (const auto &day : cfg.lab_weekdays)
    parse_weekday(day);
}

sessions::CleaningRules make_cleaning_rules(const PipelineConfig &cfg) {
  sessions::CleaningRules rules;
  rules.robot_hosts = HostMatcher::from(cfg.robot_hosts);
  rules.robot_paths = PathMatcher::from(cfg.robot_paths);
  rules.notes_paths = PathMatcher::from(cfg.notes_paths);
  return rules;
}

features::FeatureConfig make_feature_config(const PipelineConfig &cfg) {
  features::FeatureConfig fc;
  fc.campus_networks = HostMatcher::from(cfg.campus_networks);
  fc.day_start = cfg.day_start;
  fc.day_end = cfg.day_end;
  fc.lab_weekdays.fill(false);
  for (const auto &day : cfg.lab_weekdays)
    fc.lab_weekdays[static_cast<std::size_t>(parse_weekday(day))] = true;
  fc.hits_cap = cfg.hits_cap;
  fc.downloads_cap = cfg.downloads_cap;
  return fc;
}

fuzzy::FitOptions make_fit_options(const PipelineConfig &cfg) {
  fuzzy::FitOptions opts;
  opts.clusters = cfg.clusters;
  opts.method = cfg.method == "kfcm" ? fuzzy::Method::Kfcm : fuzzy::Method::Fcm;
  opts.m = cfg.m;
  opts.sigma = cfg.sigma;
  opts.eps = cfg.eps;
  opts.max_iter = cfg.max_iter;
  opts.seed = cfg.seed;
  return opts;
}

regions::RegionRule make_region_rule(const PipelineConfig &cfg) {
  regions::RegionRule rule;
  rule.theta_sure = cfg.theta_sure;
  rule.theta_member = cfg.theta_member;
  return rule;
}

} // namespace elmine::config
