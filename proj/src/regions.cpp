#include "elmine/regions.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "elmine/errors.hpp"

namespace elmine::regions {

void RegionRule::validate() const {
  if (!(theta_sure > 0.5 && theta_sure <= 1.0))
    throw InvalidRule("theta_sure must lie in (0.5, 1]");
  if (!(theta_member > 0.0 && theta_member <= 0.5))
    throw InvalidRule("theta_member must lie in (0, 0.5]");
  if (!(theta_sure > theta_member))
    throw InvalidRule("theta_sure must exceed theta_member");
}

std::vector<RegionAssignment> assign_regions(const Matrix &U,
                                             const RegionRule &rule) {
  rule.validate();
  std::size_t c = U.rows(), n = U.cols();
  if (c < 2)
    throw InvalidShape("need at least 2 clusters");
  if (c > 64)
    throw InvalidShape("more than 64 clusters not supported");

  std::vector<RegionAssignment> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t top = 0;
    for (std::size_t i = 1; i < c; ++i)
      if (U(i, j) > U(top, j))
        top = i;
    RegionSet region = 0;
    if (U(top, j) >= rule.theta_sure) {
      region = RegionSet{1} << top;
    } else {
      for (std::size_t i = 0; i < c; ++i)
        if (U(i, j) >= rule.theta_member)
          region |= RegionSet{1} << i;
      if (region == 0)
        region = RegionSet{1} << top;
    }
    out[j] = RegionAssignment{j, region};
  }
  return out;
}

std::vector<std::string> name_clusters(const fuzzy::ClusterModel &model) {
  const Matrix &C = model.centers;
  std::size_t c = C.rows(), d = C.cols();
  std::size_t dl_col = d - 1;
  std::size_t hits_col = d >= 2 ? d - 2 : d - 1;

  std::vector<std::size_t> order(c);
  for (std::size_t i = 0; i < c; ++i)
    order[i] = i;

  std::vector<std::string> labels(c);
  if (c == 3) {
    // rank by combined activity, ascending
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      double sa = C(a, hits_col) + C(a, dl_col);
      double sb = C(b, hits_col) + C(b, dl_col);
      if (sa != sb)
        return sa < sb;
      return a < b;
    });
    labels[order[0]] = "Workers";
    labels[order[1]] = "Regular";
    labels[order[2]] = "Bad";
  } else {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (C(a, dl_col) != C(b, dl_col))
        return C(a, dl_col) < C(b, dl_col);
      return a < b;
    });
    for (std::size_t rank = 0; rank < c; ++rank)
      labels[order[rank]] = "C" + std::to_string(rank + 1);
  }
  return labels;
}

std::vector<std::size_t>
display_order(const std::vector<std::string> &labels) {
  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    order[i] = i;

  std::set<std::string> names(labels.begin(), labels.end());
  if (names == std::set<std::string>{"Regular", "Workers", "Bad"}) {
    auto rank = [](const std::string &s) {
      return s == "Regular" ? 0 : s == "Workers" ? 1 : 2;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return rank(labels[a]) < rank(labels[b]);
    });
  } else {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (labels[a].size() != labels[b].size())
        return labels[a].size() < labels[b].size();
      return labels[a] < labels[b];
    });
  }
  return order;
}

std::string region_label(RegionSet region,
                         const std::vector<std::string> &labels) {
  // Overlap sets abbreviate to initials ("R&W") when the initials are
  // unambiguous; singletons always keep the full name.
  std::set<char> initials;
  for (const auto &l : labels)
    if (!l.empty())
      initials.insert(l[0]);
  bool abbreviate = initials.size() == labels.size() &&
                    __builtin_popcountll(region) > 1;

  auto order = display_order(labels);
  std::string out;
  for (std::size_t i : order) {
    if (!(region & (RegionSet{1} << i)))
      continue;
    if (!out.empty())
      out += '&';
    if (abbreviate)
      out += labels[i][0];
    else
      out += labels[i];
  }
  return out;
}

std::vector<ClusterProfile>
profile(const std::vector<RegionAssignment> &assignments,
        const std::vector<features::FeatureVector> &X,
        const std::vector<std::string> &labels) {
  std::size_t c = labels.size();
  auto order = display_order(labels);

  // region -> (sum of features, count)
  std::map<RegionSet, std::pair<features::FeatureVector, std::size_t>> sums;
  for (const auto &a : assignments) {
    auto &[sum, count] = sums[a.region];
    const auto &v = X.at(a.point_index);
    sum.campus += v.campus;
    sum.daytime += v.daytime;
    sum.labday += v.labday;
    sum.hits += v.hits;
    sum.downloads += v.downloads;
    ++count;
  }

  std::vector<RegionSet> rows;
  for (std::size_t i : order)
    rows.push_back(RegionSet{1} << i);
  if (c == 3) {
    RegionSet a = RegionSet{1} << order[0];
    RegionSet b = RegionSet{1} << order[1];
    RegionSet d = RegionSet{1} << order[2];
    rows.insert(rows.end(), {a | b, a | d, b | d, a | b | d});
  }
  // any occupied region not already listed, larger sets last
  std::vector<RegionSet> extra;
  for (const auto &[region, _] : sums)
    if (std::find(rows.begin(), rows.end(), region) == rows.end())
      extra.push_back(region);
  std::sort(extra.begin(), extra.end(), [&](RegionSet a, RegionSet b) {
    auto pa = region_label(a, labels), pb = region_label(b, labels);
    std::size_t ca = __builtin_popcountll(a), cb = __builtin_popcountll(b);
    if (ca != cb)
      return ca < cb;
    return pa < pb;
  });
  rows.insert(rows.end(), extra.begin(), extra.end());

  std::vector<ClusterProfile> out;
  for (RegionSet region : rows) {
    ClusterProfile p;
    p.region = region;
    p.region_label = region_label(region, labels);
    auto it = sums.find(region);
    if (it != sums.end() && it->second.second > 0) {
      p.size = it->second.second;
      double inv = 1.0 / static_cast<double>(p.size);
      features::FeatureVector mean = it->second.first;
      mean.campus *= inv;
      mean.daytime *= inv;
      mean.labday *= inv;
      mean.hits *= inv;
      mean.downloads *= inv;
      p.means = mean;
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

} // namespace

csv::Table profiles_csv(const std::vector<ClusterProfile> &profiles) {
  csv::Table t;
  t.header = {"region", "campus", "daytime", "labday",
              "hits",   "downloads", "size"};
  for (const auto &p : profiles) {
    std::vector<std::string> row(7);
    row[0] = p.region_label;
    if (p.means) {
      row[1] = csv::format_double(p.means->campus);
      row[2] = csv::format_double(p.means->daytime);
      row[3] = csv::format_double(p.means->labday);
      row[4] = csv::format_double(p.means->hits);
      row[5] = csv::format_double(p.means->downloads);
    }
    row[6] = std::to_string(p.size);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string profiles_table(const std::vector<ClusterProfile> &profiles) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Region", "Camp.", "Time", "Lab", "Hits", "Req.", "Size"});
  for (const auto &p : profiles) {
    std::vector<std::string> row(7);
    row[0] = p.region_label;
    if (p.means) {
      row[1] = fixed2(p.means->campus);
      row[2] = fixed2(p.means->daytime);
      row[3] = fixed2(p.means->labday);
      row[4] = fixed2(p.means->hits);
      row[5] = fixed2(p.means->downloads);
    } else {
      for (int k = 1; k <= 5; ++k)
        row[k] = "-";
    }
    row[6] = std::to_string(p.size);
    cells.push_back(std::move(row));
  }

  std::vector<std::size_t> width(7, 0);
  for (const auto &row : cells)
    for (std::size_t k = 0; k < 7; ++k)
      width[k] = std::max(width[k], row[k].size());

  std::string out;
  for (const auto &row : cells) {
    for (std::size_t k = 0; k < 7; ++k) {
      if (k)
        out += "  ";
      // left-align the label column, right-align numbers
      if (k == 0) {
        out += row[k];
        out.append(width[k] - row[k].size(), ' ');
      } else {
        out.append(width[k] - row[k].size(), ' ');
        out += row[k];
      }
    }
    out += '\n';
  }
  return out;
}

} // namespace elmine::regions
