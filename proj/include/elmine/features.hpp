#pragma once

#include <array>
#include <vector>

#include "elmine/matrix.hpp"
#include "elmine/patterns.hpp"
#include "elmine/sessions.hpp"

namespace elmine::features {

inline constexpr double kHitsScale = 10.0;
inline constexpr double kDownloadsScale = 15.0;

struct FeatureConfig {
  HostMatcher campus_networks;
  int day_start = 8;  // inclusive
  int day_end = 20;   // exclusive
  // Indexed by weekday, 0 = Sunday. Defaults mark Tuesday and Thursday.
  std::array<bool, 7> lab_weekdays = {false, false, true, false,
                                      true,  false, false};
  // Raw count mapped to the top of each range. Values <= 0 mean "derive from
  // the corpus"; extract requires positive caps.
  double hits_cap = 0.0;
  double downloads_cap = 0.0;
};

struct FeatureVector {
  double campus = 0.0;
  double daytime = 0.0;
  double labday = 0.0;
  double hits = 0.0;      // [0, 10]
  double downloads = 0.0; // [0, 15]

  bool operator==(const FeatureVector &) const = default;
};

// Smallest data value strictly above the nearest-rank 99th percentile, so at
// least 99% of the samples fall strictly below the returned cap. Falls back
// to percentile+1 at the top of the data and never returns less than 1.
double percentile_cap(std::vector<double> raw);

// Fills any non-positive cap in cfg from the visits' raw hit and download
// counts.
void derive_caps(const std::vector<sessions::Visit> &visits,
                 FeatureConfig &cfg);

// Throws InvalidShape when cfg violates its invariants (caps not positive,
// bad daytime window).
FeatureVector extract(const sessions::Visit &visit, const FeatureConfig &cfg);

std::vector<FeatureVector> extract_all(const std::vector<sessions::Visit> &visits,
                                       const FeatureConfig &cfg);

// n x 5 matrix, one row per vector, column order
// campus, daytime, labday, hits, downloads.
Matrix to_matrix(const std::vector<FeatureVector> &vectors);

} // namespace elmine::features
