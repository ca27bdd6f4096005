#include "elmine/features.hpp"

#include <algorithm>

#include "elmine/errors.hpp"

namespace elmine::features {

double percentile_cap(std::vector<double> raw) {
  if (raw.empty())
    return 1.0;
  std::sort(raw.begin(), raw.end());
  std::size_t n = raw.size();
  std::size_t rank = (99 * n + 99) / 100; // ceil(0.99 n), 1-based
  double p99 = raw[rank - 1];
  for (std::size_t i = rank; i < n; ++i)
    if (raw[i] > p99)
      return raw[i];
  return std::max(p99 + 1.0, 1.0);
}

void derive_caps(const std::vector<sessions::Visit> &visits,
                 FeatureConfig &cfg) {
  if (cfg.hits_cap > 0.0 && cfg.downloads_cap > 0.0)
    return;
  std::vector<double> hits, downloads;
  hits.reserve(visits.size());
  downloads.reserve(visits.size());
  for (const auto &v : visits) {
    hits.push_back(static_cast<double>(v.hits));
    downloads.push_back(static_cast<double>(v.downloads));
  }
  if (cfg.hits_cap <= 0.0)
    cfg.hits_cap = percentile_cap(std::move(hits));
  if (cfg.downloads_cap <= 0.0)
    cfg.downloads_cap = percentile_cap(std::move(downloads));
}

namespace {

void check_config(const FeatureConfig &cfg) {
  if (cfg.hits_cap <= 0.0 || cfg.downloads_cap <= 0.0)
    throw InvalidShape("feature caps must be positive");
  if (cfg.day_start < 0 || cfg.day_start >= cfg.day_end || cfg.day_end > 24)
    throw InvalidShape("daytime window must satisfy 0 <= start < end <= 24");
}

double scale(double raw, double cap, double top) {
  return std::min(raw, cap) / cap * top;
}

} // namespace

FeatureVector extract(const sessions::Visit &visit, const FeatureConfig &cfg) {
  check_config(cfg);
  const CivilTime &start = visit.records.front().time;
  FeatureVector out;
  out.campus = cfg.campus_networks.matches(visit.host) ? 1.0 : 0.0;
  out.daytime =
      (start.hour >= cfg.day_start && start.hour < cfg.day_end) ? 1.0 : 0.0;
  out.labday = cfg.lab_weekdays[start.weekday()] ? 1.0 : 0.0;
  out.hits = scale(static_cast<double>(visit.hits), cfg.hits_cap, kHitsScale);
  out.downloads = scale(static_cast<double>(visit.downloads),
                        cfg.downloads_cap, kDownloadsScale);
  return out;
}

std::vector<FeatureVector>
extract_all(const std::vector<sessions::Visit> &visits,
            const FeatureConfig &cfg) {
  std::vector<FeatureVector> out;
  out.reserve(visits.size());
  for (const auto &v : visits)
    out.push_back(extract(v, cfg));
  return out;
}

Matrix to_matrix(const std::vector<FeatureVector> &vectors) {
  Matrix m(vectors.size(), 5);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    const auto &v = vectors[r];
    m(r, 0) = v.campus;
    m(r, 1) = v.daytime;
    m(r, 2) = v.labday;
    m(r, 3) = v.hits;
    m(r, 4) = v.downloads;
  }
  return m;
}

} // namespace elmine::features
