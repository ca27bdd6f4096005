#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "elmine/config.hpp"
#include "elmine/errors.hpp"
#include "elmine/pipeline.hpp"

namespace {

using elmine::config::PipelineConfig;

// Tunables shared by the subcommands; only flags the user actually passed
// override the config file.
struct Flags {
  std::string config_path;
  std::string out_dir;
  std::string method;
  std::uint64_t seed = 0;
  std::size_t clusters = 0;
  std::size_t max_iter = 0;
  double m = 0, sigma = 0, eps = 0;
  double theta_sure = 0, theta_member = 0;
  std::int64_t timeout_mins = 0;

  CLI::Option *o_out = nullptr, *o_method = nullptr, *o_seed = nullptr;
  CLI::Option *o_clusters = nullptr, *o_max_iter = nullptr, *o_m = nullptr;
  CLI::Option *o_sigma = nullptr, *o_eps = nullptr, *o_sure = nullptr;
  CLI::Option *o_member = nullptr, *o_timeout = nullptr;

  void attach(CLI::App *cmd) {
    cmd->add_option("--config", config_path,
                    "JSON config file with pipeline tunables");
    o_out = cmd->add_option("--out-dir", out_dir,
                            "directory for output files (default .)");
    o_seed = cmd->add_option("--seed", seed, "random seed");
    o_method = cmd->add_option("--method", method, "clustering method")
                   ->check(CLI::IsMember({"fcm", "kfcm"}));
    o_clusters = cmd->add_option("--clusters", clusters, "cluster count");
    o_m = cmd->add_option("--m", m, "fuzzifier exponent (> 1)");
    o_sigma = cmd->add_option("--sigma", sigma, "kernel width for kfcm");
    o_eps = cmd->add_option("--eps", eps, "membership-change stop threshold");
    o_max_iter = cmd->add_option("--max-iter", max_iter, "iteration cap");
    o_timeout =
        cmd->add_option("--timeout-mins", timeout_mins, "session timeout");
    o_sure = cmd->add_option("--theta-sure", theta_sure,
                             "top membership needed for a Sure assignment");
    o_member = cmd->add_option("--theta-member", theta_member,
                               "membership needed to join an overlap set");
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg = config_path.empty()
                             ? elmine::config::default_config()
                             : elmine::config::load_config(config_path);
    if (o_out->count())
      cfg.out_dir = out_dir;
    if (o_seed->count())
      cfg.seed = seed;
    if (o_method->count())
      cfg.method = method;
    if (o_clusters->count())
      cfg.clusters = clusters;
    if (o_m->count())
      cfg.m = m;
    if (o_sigma->count())
      cfg.sigma = sigma;
    if (o_eps->count())
      cfg.eps = eps;
    if (o_max_iter->count())
      cfg.max_iter = max_iter;
    if (o_timeout->count())
      cfg.timeout_minutes = timeout_mins;
    if (o_sure->count())
      cfg.theta_sure = theta_sure;
    if (o_member->count())
      cfg.theta_member = theta_member;
    elmine::config::validate(cfg);
    return cfg;
  }
};

int run(int argc, char **argv) {
  CLI::App app{"web usage mining for e-learning access logs"};
  app.require_subcommand(1);

  std::string log_path, features_path, memberships_path, regions_path,
      truth_path, spec_path;

  auto *parse = app.add_subcommand(
      "parse", "clean an access log and emit per-visit features");
  parse->add_option("log", log_path, "access log in Common Log Format")
      ->required();
  Flags parse_flags;
  parse_flags.attach(parse);

  auto *cluster = app.add_subcommand(
      "cluster", "fit fuzzy clusters to a feature file");
  cluster->add_option("features", features_path, "features.csv from parse")
      ->required();
  Flags cluster_flags;
  cluster_flags.attach(cluster);

  auto *report = app.add_subcommand(
      "report", "derive Sure/May-Be regions and behavior profiles");
  report
      ->add_option("memberships", memberships_path,
                   "memberships.csv from cluster")
      ->required();
  report->add_option("features", features_path, "features.csv from parse")
      ->required();
  Flags report_flags;
  report_flags.attach(report);

  auto *compare = app.add_subcommand(
      "compare", "score predicted regions against a ground-truth table");
  compare->add_option("regions", regions_path, "regions.csv from report")
      ->required();
  compare->add_option("truth", truth_path, "truth.csv with host,archetype")
      ->required();
  Flags compare_flags;
  compare_flags.attach(compare);

  auto *synth = app.add_subcommand(
      "synth", "generate a synthetic access log with ground truth");
  synth->add_option("--spec", spec_path, "JSON traffic spec (default built-in)");
  Flags synth_flags;
  synth_flags.attach(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (parse->parsed()) {
    auto cfg = parse_flags.resolve();
    auto summary = elmine::pipeline::cmd_parse(log_path, cfg);
    std::printf("hits %zu\n", summary.hits);
    std::printf("hits after cleaning %zu\n", summary.hits_after_cleaning);
    std::printf("visits %zu\n", summary.visits);
    std::printf("visits after cleaning %zu\n",
                summary.visits_after_cleaning);
    if (summary.skipped_lines)
      std::printf("skipped %zu malformed lines\n", summary.skipped_lines);
  } else if (cluster->parsed()) {
    auto cfg = cluster_flags.resolve();
    auto result = elmine::pipeline::cmd_cluster(features_path, cfg);
    std::printf("%s with %zu clusters: %s after %zu iterations\n",
                cfg.method.c_str(), result.model.centers.rows(),
                result.report.converged ? "converged" : "stopped",
                result.report.iterations);
    if (!result.report.objective_trace.empty())
      std::printf("objective %.6g\n", result.report.objective_trace.back());
  } else if (report->parsed()) {
    auto cfg = report_flags.resolve();
    elmine::pipeline::cmd_report(memberships_path, features_path, cfg);
    std::printf("wrote profiles.csv, profiles.txt and regions.csv\n");
  } else if (compare->parsed()) {
    auto cfg = compare_flags.resolve();
    auto rows = elmine::pipeline::cmd_compare(regions_path, truth_path, cfg);
    for (const auto &row : rows)
      std::printf("%s %zu/%zu %.1f%%\n", row.label.c_str(), row.matched,
                  row.visits, 100.0 * row.ratio);
  } else if (synth->parsed()) {
    auto cfg = synth_flags.resolve();
    auto result = elmine::pipeline::cmd_synth(spec_path, cfg);
    std::printf("%zu log lines, %zu student visits, %zu robot hits\n",
                result.lines.size(), result.student_visits,
                result.robot_hits);
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const elmine::Error &e) {
    std::cerr << e.what() << "\n";
    return elmine::is_usage_error(e) ? 1 : 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
