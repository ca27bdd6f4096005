#include "elmine/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "elmine/csv.hpp"
#include "elmine/errors.hpp"
#include "elmine/features.hpp"
#include "elmine/logparse.hpp"
#include "elmine/regions.hpp"
#include "elmine/sessions.hpp"

namespace elmine::pipeline {

namespace {

namespace fs = std::filesystem;

std::string out_path(const config::PipelineConfig &cfg,
                     const std::string &name) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec)
    throw IoFailure("cannot create output directory: " + cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw IoFailure("cannot open file for writing: " + path);
  out << text;
  if (!out)
    throw IoFailure("write failure on file: " + path);
}

// CLF timestamp without the surrounding brackets; used as the CSV time field.
std::string start_text(const CivilTime &t) {
  std::string s = logs::format_time(t);
  return s.substr(1, s.size() - 2);
}

double parse_double(const std::string &s, const std::string &where) {
  char *end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw MalformedLine("bad number \"" + s + "\" in " + where);
  return v;
}

std::string lower(std::string s) {
  for (char &c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// "Workers" and "Worker" name the same class.
std::string normalize_class(const std::string &name) {
  std::string low = lower(name);
  if (low.size() > 1 && low.back() == 's')
    low.pop_back();
  return low;
}

} // namespace

ParseSummary cmd_parse(const std::string &log_path,
                       const config::PipelineConfig &cfg) {
  auto rules = config::make_cleaning_rules(cfg);
  auto parsed = logs::parse_file(log_path);

  ParseSummary summary;
  summary.skipped_lines = parsed.skipped;
  summary.hits = parsed.records.size();

  auto cleaned = sessions::clean_hits(parsed.records, rules);
  summary.hits_after_cleaning = cleaned.size();

  auto visits = sessions::sessionize(cleaned, cfg.timeout_minutes * 60);
  summary.visits = visits.size();

  auto kept = sessions::clean_visits(visits, rules);
  summary.visits_after_cleaning = kept.size();

  auto fc = config::make_feature_config(cfg);
  features::derive_caps(kept, fc);
  auto vectors = features::extract_all(kept, fc);

  csv::Table features;
  features.header = {"host", "start",     "campus", "daytime",
                     "labday", "hits", "downloads"};
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto &v = vectors[j];
    features.rows.push_back({kept[j].host,
                             start_text(kept[j].records.front().time),
                             csv::format_double(v.campus),
                             csv::format_double(v.daytime),
                             csv::format_double(v.labday),
                             csv::format_double(v.hits),
                             csv::format_double(v.downloads)});
  }
  csv::write_file(out_path(cfg, "features.csv"), features);

  csv::Table table;
  table.header = {"hits", "hits_after_cleaning", "visits",
                  "visits_after_cleaning"};
  table.rows.push_back({std::to_string(summary.hits),
                        std::to_string(summary.hits_after_cleaning),
                        std::to_string(summary.visits),
                        std::to_string(summary.visits_after_cleaning)});
  csv::write_file(out_path(cfg, "summary.csv"), table);
  return summary;
}

FeatureFile read_features(const std::string &path) {
  csv::Table table = csv::read_file(path);
  const std::vector<std::string> expected = {
      "host", "start", "campus", "daytime", "labday", "hits", "downloads"};
  if (table.header != expected)
    throw ShapeMismatch("unexpected feature file header in " + path);

  FeatureFile ff;
  ff.X = Matrix(table.rows.size(), 5);
  for (std::size_t j = 0; j < table.rows.size(); ++j) {
    const auto &row = table.rows[j];
    if (row.size() != 7)
      throw MalformedLine("feature row with wrong field count in " + path);
    ff.hosts.push_back(row[0]);
    ff.starts.push_back(row[1]);
    for (std::size_t k = 0; k < 5; ++k)
      ff.X(j, k) = parse_double(row[2 + k], path);
  }
  return ff;
}

Matrix read_memberships(const std::string &path) {
  csv::Table table = csv::read_file(path);
  if (table.header.size() < 3 || table.header[0] != "point_index")
    throw ShapeMismatch("unexpected membership file header in " + path);
  for (std::size_t i = 1; i < table.header.size(); ++i)
    if (table.header[i] != "u_" + std::to_string(i))
      throw ShapeMismatch("unexpected membership file header in " + path);

  std::size_t c = table.header.size() - 1;
  Matrix U(c, table.rows.size());
  for (std::size_t j = 0; j < table.rows.size(); ++j) {
    const auto &row = table.rows[j];
    if (row.size() != c + 1)
      throw MalformedLine("membership row with wrong field count in " + path);
    for (std::size_t i = 0; i < c; ++i)
      U(i, j) = parse_double(row[1 + i], path);
  }
  return U;
}

fuzzy::FitResult cmd_cluster(const std::string &features_path,
                             const config::PipelineConfig &cfg) {
  FeatureFile ff = read_features(features_path);
  auto opts = config::make_fit_options(cfg);
  fuzzy::FitResult result;
  if (opts.method == fuzzy::Method::Kfcm) {
    // Warm-start the kernel fit from the plain fit's partition. From a random
    // start the kernel's damping of far points can strand a center inside a
    // heavy cluster instead of chasing a small distant one.
    auto plain = opts;
    plain.method = fuzzy::Method::Fcm;
    result = fuzzy::fit_from(ff.X, fuzzy::fit(ff.X, plain).memberships, opts);
  } else {
    result = fuzzy::fit(ff.X, opts);
  }

  const Matrix &U = result.memberships;
  csv::Table memberships;
  memberships.header = {"point_index"};
  for (std::size_t i = 1; i <= U.rows(); ++i)
    memberships.header.push_back("u_" + std::to_string(i));
  for (std::size_t j = 0; j < U.cols(); ++j) {
    std::vector<std::string> row;
    row.push_back(std::to_string(j));
    for (std::size_t i = 0; i < U.rows(); ++i)
      row.push_back(csv::format_double(U(i, j)));
    memberships.rows.push_back(std::move(row));
  }
  csv::write_file(out_path(cfg, "memberships.csv"), memberships);

  const auto &model = result.model;
  std::string text;
  text += "method " +
          std::string(model.method == fuzzy::Method::Kfcm ? "kfcm" : "fcm") +
          "\n";
  text += "m " + csv::format_double(model.m) + "\n";
  if (model.method == fuzzy::Method::Kfcm)
    text += "sigma " + csv::format_double(model.sigma) + "\n";
  text += "clusters " + std::to_string(model.centers.rows()) + "\n";
  text += "dimensions " + std::to_string(model.centers.cols()) + "\n";
  for (std::size_t i = 0; i < model.centers.rows(); ++i) {
    text += "center " + std::to_string(i);
    for (std::size_t k = 0; k < model.centers.cols(); ++k)
      text += " " + csv::format_double(model.centers(i, k));
    text += "\n";
  }
  text += "iterations " + std::to_string(result.report.iterations) + "\n";
  text += std::string("converged ") +
          (result.report.converged ? "true" : "false") + "\n";
  text += "final_delta " + csv::format_double(result.report.final_delta) +
          "\n";
  write_text(out_path(cfg, "model.txt"), text);

  std::string trace;
  trace += "iterations " + std::to_string(result.report.iterations) + "\n";
  trace += std::string("converged ") +
           (result.report.converged ? "true" : "false") + "\n";
  trace += "final_delta " + csv::format_double(result.report.final_delta) +
           "\n";
  trace += "objective_trace\n";
  for (std::size_t t = 0; t < result.report.objective_trace.size(); ++t)
    trace += std::to_string(t + 1) + " " +
             csv::format_double(result.report.objective_trace[t]) + "\n";
  write_text(out_path(cfg, "fit_report.txt"), trace);
  return result;
}

void cmd_report(const std::string &memberships_path,
                const std::string &features_path,
                const config::PipelineConfig &cfg) {
  FeatureFile ff = read_features(features_path);
  Matrix U = read_memberships(memberships_path);
  if (U.cols() != ff.X.rows())
    throw ShapeMismatch("membership and feature files disagree on row count");

  auto rule = config::make_region_rule(cfg);
  auto assignments = regions::assign_regions(U, rule);

  // the membership file carries no centers, so recover them as the
  // membership-weighted means of the features
  fuzzy::ClusterModel model;
  model.m = cfg.m;
  model.centers = fuzzy::fcm_centers(ff.X, U, cfg.m);
  auto labels = regions::name_clusters(model);

  std::vector<features::FeatureVector> vectors(ff.X.rows());
  for (std::size_t j = 0; j < ff.X.rows(); ++j) {
    vectors[j].campus = ff.X(j, 0);
    vectors[j].daytime = ff.X(j, 1);
    vectors[j].labday = ff.X(j, 2);
    vectors[j].hits = ff.X(j, 3);
    vectors[j].downloads = ff.X(j, 4);
  }

  auto profiles = regions::profile(assignments, vectors, labels);
  csv::write_file(out_path(cfg, "profiles.csv"),
                  regions::profiles_csv(profiles));
  write_text(out_path(cfg, "profiles.txt"),
             regions::profiles_table(profiles));

  csv::Table table;
  table.header = {"point_index", "host", "start", "top", "region"};
  for (std::size_t j = 0; j < U.cols(); ++j) {
    std::size_t top = 0;
    for (std::size_t i = 1; i < U.rows(); ++i)
      if (U(i, j) > U(top, j))
        top = i;
    table.rows.push_back({std::to_string(j), ff.hosts[j], ff.starts[j],
                          labels[top],
                          regions::region_label(assignments[j].region,
                                                labels)});
  }
  csv::write_file(out_path(cfg, "regions.csv"), table);
}

std::vector<MatchRow> cmd_compare(const std::string &regions_path,
                                  const std::string &truth_path,
                                  const config::PipelineConfig &cfg) {
  csv::Table regions = csv::read_file(regions_path);
  if (regions.header !=
      std::vector<std::string>{"point_index", "host", "start", "top",
                               "region"})
    throw ShapeMismatch("unexpected region file header in " + regions_path);
  csv::Table truth = csv::read_file(truth_path);
  if (truth.header != std::vector<std::string>{"host", "archetype"})
    throw ShapeMismatch("unexpected truth file header in " + truth_path);

  std::map<std::string, std::string> truth_by_host;
  for (const auto &row : truth.rows) {
    if (row.size() != 2)
      throw MalformedLine("truth row with wrong field count in " + truth_path);
    truth_by_host[row[0]] = row[1];
  }

  // excluded from the ratios: classes removed by cleaning, plus crawler noise
  const std::set<std::string> skip = {"casual", "absent", "robot"};

  std::map<std::string, MatchRow> by_class;
  std::size_t total = 0, total_matched = 0;
  for (const auto &row : regions.rows) {
    if (row.size() != 5)
      throw MalformedLine("region row with wrong field count in " +
                          regions_path);
    auto it = truth_by_host.find(row[1]);
    if (it == truth_by_host.end())
      throw KeyMismatch("host " + row[1] + " missing from truth file");
    std::string cls = normalize_class(it->second);
    if (skip.count(cls))
      continue;
    auto &entry = by_class[it->second];
    entry.label = it->second;
    ++entry.visits;
    ++total;
    if (normalize_class(row[3]) == cls) {
      ++entry.matched;
      ++total_matched;
    }
  }

  std::vector<MatchRow> rows;
  auto class_rank = [](const std::string &label) {
    std::string n = normalize_class(label);
    return n == "regular" ? 0 : n == "worker" ? 1 : n == "bad" ? 2 : 3;
  };
  for (auto &[label, row] : by_class) {
    row.ratio = row.visits
                    ? static_cast<double>(row.matched) /
                          static_cast<double>(row.visits)
                    : 0.0;
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [&](const MatchRow &a,
                                          const MatchRow &b) {
    int ra = class_rank(a.label), rb = class_rank(b.label);
    if (ra != rb)
      return ra < rb;
    return a.label < b.label;
  });

  MatchRow overall;
  overall.label = "Overall";
  overall.visits = total;
  overall.matched = total_matched;
  overall.ratio =
      total ? static_cast<double>(total_matched) / static_cast<double>(total)
            : 0.0;
  rows.push_back(overall);

  csv::Table table;
  table.header = {"class", "visits", "matched", "ratio"};
  for (const auto &row : rows)
    table.rows.push_back({row.label, std::to_string(row.visits),
                          std::to_string(row.matched),
                          csv::format_double(row.ratio)});
  csv::write_file(out_path(cfg, "match.csv"), table);
  return rows;
}

synth::TrafficSpec load_traffic_spec(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoFailure("cannot open traffic spec: " + path);

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw InvalidSpec("traffic spec is not valid JSON: " +
                      std::string(e.what()));
  }
  if (!doc.is_object())
    throw InvalidSpec("traffic spec root must be a JSON object");

  synth::TrafficSpec spec = synth::default_spec();
  try {
    for (const auto &[key, value] : doc.items()) {
      if (key == "weeks")
        spec.weeks = value.get<std::size_t>();
      else if (key == "listed_robot_hosts")
        spec.listed_robot_hosts = value.get<std::size_t>();
      else if (key == "stealth_robot_hosts")
        spec.stealth_robot_hosts = value.get<std::size_t>();
      else if (key == "robot_hits_per_host")
        spec.robot_hits_per_host = value.get<double>();
      else if (key == "archetypes") {
        if (!value.is_array())
          throw InvalidSpec("archetypes must be an array");
        spec.archetypes.clear();
        for (const auto &item : value) {
          if (!item.is_object())
            throw InvalidSpec("each archetype must be a JSON object");
          synth::ArchetypeSpec a;
          bool named = false;
          for (const auto &[akey, avalue] : item.items()) {
            if (akey == "name") {
              std::string name = avalue.get<std::string>();
              if (name == "Regular")
                a.name = synth::Archetype::Regular;
              else if (name == "Worker")
                a.name = synth::Archetype::Worker;
              else if (name == "Bad")
                a.name = synth::Archetype::Bad;
              else if (name == "Casual")
                a.name = synth::Archetype::Casual;
              else if (name == "Absent")
                a.name = synth::Archetype::Absent;
              else
                throw InvalidSpec("unknown archetype name: " + name);
              named = true;
            } else if (akey == "count")
              a.count = avalue.get<std::size_t>();
            else if (akey == "visit_rate")
              a.visit_rate = avalue.get<double>();
            else if (akey == "hits_per_visit" ||
                     akey == "downloads_per_visit") {
              if (!avalue.is_array() || avalue.size() != 2)
                throw InvalidSpec(akey + " must be a [mean, spread] pair");
              synth::CountDist d{avalue[0].get<double>(),
                                 avalue[1].get<double>()};
              (akey == "hits_per_visit" ? a.hits_per_visit
                                        : a.downloads_per_visit) = d;
            } else if (akey == "campus_prob")
              a.campus_prob = avalue.get<double>();
            else if (akey == "daytime_prob")
              a.daytime_prob = avalue.get<double>();
            else if (akey == "labday_prob")
              a.labday_prob = avalue.get<double>();
            else
              throw InvalidSpec("unknown archetype key: " + akey);
          }
          if (!named)
            throw InvalidSpec("archetype entry is missing its name");
          spec.archetypes.push_back(a);
        }
      } else {
        throw InvalidSpec("unknown traffic spec key: " + key);
      }
    }
  } catch (const nlohmann::json::type_error &e) {
    throw InvalidSpec("traffic spec value has the wrong type: " +
                      std::string(e.what()));
  }
  return spec;
}

synth::SynthResult cmd_synth(const std::string &spec_path,
                             const config::PipelineConfig &cfg) {
  synth::TrafficSpec spec =
      spec_path.empty() ? synth::default_spec() : load_traffic_spec(spec_path);
  synth::SynthResult result = synth::generate(spec, cfg.seed);

  std::string log;
  for (const auto &line : result.lines) {
    log += line;
    log += '\n';
  }
  write_text(out_path(cfg, "access.log"), log);
  csv::write_file(out_path(cfg, "truth.csv"), result.truth);
  return result;
}

} // namespace elmine::pipeline
