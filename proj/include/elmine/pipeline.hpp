#pragma once

#include <string>
#include <vector>

#include "elmine/config.hpp"
#include "elmine/fuzzyclust.hpp"
#include "elmine/matrix.hpp"
#include "elmine/synth.hpp"

namespace elmine::pipeline {

// parse -> features.csv + summary.csv
// cluster -> model.txt + memberships.csv + fit_report.txt
// report -> profiles.csv + profiles.txt + regions.csv
// compare -> match.csv
// synth -> access.log + truth.csv
// All outputs land in cfg.out_dir, which is created on demand.

struct ParseSummary {
  std::size_t hits = 0;
  std::size_t hits_after_cleaning = 0;
  std::size_t visits = 0;
  std::size_t visits_after_cleaning = 0;
  std::size_t skipped_lines = 0; // not part of the summary file
};

ParseSummary cmd_parse(const std::string &log_path,
                       const config::PipelineConfig &cfg);

fuzzy::FitResult cmd_cluster(const std::string &features_path,
                             const config::PipelineConfig &cfg);

void cmd_report(const std::string &memberships_path,
                const std::string &features_path,
                const config::PipelineConfig &cfg);

struct MatchRow {
  std::string label; // truth class, or "Overall" for the footer row
  std::size_t visits = 0;
  std::size_t matched = 0;
  double ratio = 0.0;
};

std::vector<MatchRow> cmd_compare(const std::string &regions_path,
                                  const std::string &truth_path,
                                  const config::PipelineConfig &cfg);

// Empty spec_path selects the built-in default traffic spec.
synth::SynthResult cmd_synth(const std::string &spec_path,
                             const config::PipelineConfig &cfg);

// JSON counterpart of synth::TrafficSpec; throws InvalidSpec on any problem
// with the file's contents, IoFailure when it cannot be read.
synth::TrafficSpec load_traffic_spec(const std::string &path);

// Columns host,start plus the five feature columns as a matrix.
struct FeatureFile {
  std::vector<std::string> hosts;
  std::vector<std::string> starts;
  Matrix X;
};

FeatureFile read_features(const std::string &path);

// point_index,u_1,...,u_c rows back into a c x n matrix.
Matrix read_memberships(const std::string &path);

} // namespace elmine::pipeline
