#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elmine/features.hpp"
#include "elmine/fuzzyclust.hpp"
#include "elmine/regions.hpp"
#include "elmine/sessions.hpp"

namespace elmine::config {

// Every tunable of the pipeline in one place, loadable from a JSON file and
// overridable by CLI flags.
struct PipelineConfig {
  // cleaning
  std::vector<std::string> robot_hosts = {"66.249.64.0/19"};
  std::vector<std::string> robot_paths = {"/robots.txt"};
  std::vector<std::string> notes_paths = {"/notes/"};
  std::int64_t timeout_minutes = 30;

  // features
  std::vector<std::string> campus_networks = {"10.1.0.0/16"};
  int day_start = 8;
  int day_end = 20;
  std::vector<std::string> lab_weekdays = {"Tuesday", "Thursday"};
  double hits_cap = 0.0;      // 0 = derive from the corpus
  double downloads_cap = 0.0; // 0 = derive from the corpus

  // clustering
  std::size_t clusters = 3;
  std::string method = "fcm"; // "fcm" or "kfcm"
  double m = 2.0;
  // Kernel width for kfcm. The extracted features live in a fixed box (three
  // 0/1 indicators, hits in [0,10], downloads in [0,15]), so half that box's
  // diagonal makes a sensible scale. JSON null clears it, falling back to the
  // fit-time median-distance heuristic.
  std::optional<double> sigma = 9.0;
  double eps = 1e-5;
  std::size_t max_iter = 300;
  std::uint64_t seed = 1;

  // regions
  double theta_sure = 0.6;
  double theta_member = 0.25;

  // output
  std::string out_dir = ".";
};

PipelineConfig default_config();

// JSON object with keys matching the field names above (sigma may be null).
// Throws IoFailure when the file cannot be read and ConfigError on malformed
// JSON, unknown keys, wrong types or out-of-range values.
PipelineConfig load_config(const std::string &path);

// Case-insensitive full weekday name to 0=Sunday..6=Saturday.
int parse_weekday(const std::string &name);

// Rejects bad method strings, cluster counts, exponents and windows.
void validate(const PipelineConfig &cfg);

sessions::CleaningRules make_cleaning_rules(const PipelineConfig &cfg);
features::FeatureConfig make_feature_config(const PipelineConfig &cfg);
fuzzy::FitOptions make_fit_options(const PipelineConfig &cfg);
regions::RegionRule make_region_rule(const PipelineConfig &cfg);

} // namespace elmine::config
