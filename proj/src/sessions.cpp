#include "elmine/sessions.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace elmine::sessions {

std::vector<LogRecord> clean_hits(const std::vector<LogRecord> &records,
                                  const CleaningRules &rules) {
  std::unordered_set<std::string> flagged;
  if (!rules.robot_paths.empty()) {
    for (const auto &rec : records)
      if (rules.robot_paths.matches(rec.path))
        flagged.insert(rec.host);
  }

  std::vector<LogRecord> kept;
  kept.reserve(records.size());
  for (const auto &rec : records) {
    if (rules.robot_hosts.matches(rec.host))
      continue;
    if (flagged.count(rec.host))
      continue;
    kept.push_back(rec);
  }
  return kept;
}

bool is_download(const LogRecord &rec, const CleaningRules &rules) {
  return rec.status == 200 && rec.bytes > 0 &&
         rules.notes_paths.matches(rec.path);
}

std::size_t count_downloads(const Visit &visit, const CleaningRules &rules) {
  std::size_t n = 0;
  for (const auto &rec : visit.records)
    if (is_download(rec, rules))
      ++n;
  return n;
}

std::vector<Visit> sessionize(const std::vector<LogRecord> &records,
                              std::int64_t timeout_seconds) {
  std::unordered_map<std::string, std::vector<const LogRecord *>> by_host;
  for (const auto &rec : records)
    by_host[rec.host].push_back(&rec);

  std::vector<Visit> visits;
  for (auto &[host, recs] : by_host) {
    std::stable_sort(recs.begin(), recs.end(),
                     [](const LogRecord *a, const LogRecord *b) {
                       return a->time.epoch_seconds() < b->time.epoch_seconds();
                     });
    Visit current;
    for (const LogRecord *rec : recs) {
      std::int64_t t = rec->time.epoch_seconds();
      if (!current.records.empty() && t - current.end > timeout_seconds) {
        visits.push_back(std::move(current));
        current = Visit{};
      }
      if (current.records.empty()) {
        current.host = host;
        current.start = t;
      }
      current.end = t;
      current.records.push_back(*rec);
    }
    if (!current.records.empty())
      visits.push_back(std::move(current));
  }

  for (auto &v : visits)
    v.hits = v.records.size();
  std::sort(visits.begin(), visits.end(), [](const Visit &a, const Visit &b) {
    if (a.start != b.start)
      return a.start < b.start;
    return a.host < b.host;
  });
  return visits;
}

std::vector<Visit> clean_visits(const std::vector<Visit> &visits,
                                const CleaningRules &rules) {
  std::vector<Visit> kept;
  kept.reserve(visits.size());
  for (const auto &v : visits) {
    Visit copy = v;
    copy.downloads = count_downloads(copy, rules);
    if (copy.downloads >= 1)
      kept.push_back(std::move(copy));
  }
  return kept;
}

} // namespace elmine::sessions
