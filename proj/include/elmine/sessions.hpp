#pragma once

#include <cstdint>
#include <vector>

#include "elmine/logparse.hpp"
#include "elmine/patterns.hpp"

namespace elmine::sessions {

using logs::LogRecord;

struct CleaningRules {
  // Hosts treated as robots outright (exact hosts or CIDR blocks).
  HostMatcher robot_hosts;
  // Paths whose requesters are flagged as robots; every record from such a
  // host is dropped, not just the flagged request.
  PathMatcher robot_paths;
  // Paths that count as class-note documents.
  PathMatcher notes_paths;
};

struct Visit {
  std::string host;
  std::int64_t start = 0; // epoch seconds of first request
  std::int64_t end = 0;   // epoch seconds of last request
  std::vector<LogRecord> records;
  std::size_t hits = 0;
  std::size_t downloads = 0;
};

// Drops records from robot hosts and from any host that ever requested a
// robot-flagged path. Relative order of survivors is preserved.
std::vector<LogRecord> clean_hits(const std::vector<LogRecord> &records,
                                  const CleaningRules &rules);

// True when the record is a successful, non-empty fetch of a class-note path.
bool is_download(const LogRecord &rec, const CleaningRules &rules);

std::size_t count_downloads(const Visit &visit, const CleaningRules &rules);

// Groups records by host, orders each host's requests by time, and starts a
// new visit whenever the gap from the previous request exceeds
// timeout_seconds (a gap exactly equal to the timeout stays in the visit).
// Output is sorted by (start time, host). Download counts are left at zero;
// clean_visits fills them.
std::vector<Visit> sessionize(const std::vector<LogRecord> &records,
                              std::int64_t timeout_seconds);

// Fills each visit's download count against the notes paths, then drops
// visits with zero downloads (the casual visitors).
std::vector<Visit> clean_visits(const std::vector<Visit> &visits,
                                const CleaningRules &rules);

} // namespace elmine::sessions
