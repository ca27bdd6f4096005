#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elmine/csv.hpp"
#include "elmine/features.hpp"
#include "elmine/fuzzyclust.hpp"
#include "elmine/matrix.hpp"

namespace elmine::regions {

struct RegionRule {
  double theta_sure = 0.6;   // top membership needed for a Sure assignment
  double theta_member = 0.25; // membership needed to join an overlap set

  // Throws InvalidRule unless 0.5 < theta_sure <= 1,
  // 0 < theta_member <= 0.5 and theta_sure > theta_member.
  void validate() const;
};

// Cluster subset as a bitmask over cluster indices (bit i = cluster i).
using RegionSet = std::uint64_t;

struct RegionAssignment {
  std::size_t point_index = 0;
  RegionSet region = 0;

  bool sure() const { return region != 0 && (region & (region - 1)) == 0; }
};

struct ClusterProfile {
  std::string region_label;
  RegionSet region = 0;
  // Per-feature means over the region's members; empty when size == 0.
  std::optional<features::FeatureVector> means;
  std::size_t size = 0;
};

// Per point: the argmax cluster alone when its membership reaches
// theta_sure, otherwise every cluster at or above theta_member, falling back
// to the argmax alone when none qualifies.
std::vector<RegionAssignment> assign_regions(const Matrix &U,
                                             const RegionRule &rule);

// Names each cluster from its center's activity level (last two feature
// columns, hits and downloads). With three clusters the highest combined
// level is "Bad", the lowest "Workers" and the middle "Regular"; otherwise
// clusters are "C1".."Cc" in ascending download order.
std::vector<std::string> name_clusters(const fuzzy::ClusterModel &model);

// Cluster indices in report order: Regular, Workers, Bad when those are the
// labels, otherwise sorted by label.
std::vector<std::size_t> display_order(const std::vector<std::string> &labels);

// "R&W" style label for a cluster subset. Single-letter abbreviations are
// used when every label starts with a distinct letter, full labels otherwise.
std::string region_label(RegionSet region,
                         const std::vector<std::string> &labels);

// One row per region: every singleton, and with three clusters the three
// pairs and the triple as well (size 0 rows included, mirroring the report
// layout); other overlap sets appear only when occupied. Rows are ordered
// singletons first, then by overlap size, in display order throughout.
std::vector<ClusterProfile>
profile(const std::vector<RegionAssignment> &assignments,
        const std::vector<features::FeatureVector> &X,
        const std::vector<std::string> &labels);

csv::Table profiles_csv(const std::vector<ClusterProfile> &profiles);

// Aligned text table with columns Region, Camp., Time, Lab, Hits, Req., Size.
std::string profiles_table(const std::vector<ClusterProfile> &profiles);

} // namespace elmine::regions
