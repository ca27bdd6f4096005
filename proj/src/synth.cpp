#include "elmine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "elmine/civil.hpp"
#include "elmine/errors.hpp"
#include "elmine/logparse.hpp"

namespace elmine::synth {

namespace {

constexpr int kZoneMinutes = -180;
constexpr std::int64_t kDaySeconds = 86400;
constexpr std::int64_t kMinVisitGap = 35 * 60; // comfortably past the timeout

// day 0 of every generated trace: Monday, 3 September 2001
const std::int64_t kWindowStart =
    CivilTime{2001, 9, 3, 0, 0, 0, kZoneMinutes}.epoch_seconds();

const std::vector<std::string> &notes_paths() {
  static const std::vector<std::string> paths = [] {
    std::vector<std::string> p;
    char buf[64];
    for (int week = 1; week <= 16; ++week) {
      for (int part = 1; part <= 2; ++part) {
        std::snprintf(buf, sizeof(buf), "/notes/week%02d/lecture%d.pdf", week,
                      part);
        p.push_back(buf);
      }
      std::snprintf(buf, sizeof(buf), "/notes/week%02d/slides.ppt", week);
      p.push_back(buf);
    }
    return p;
  }();
  return paths;
}

const std::vector<std::string> &page_paths() {
  static const std::vector<std::string> paths = {
      "/",
      "/index.html",
      "/syllabus.html",
      "/schedule.html",
      "/announcements.html",
      "/assignments/a1.html",
      "/assignments/a2.html",
      "/assignments/a3.html",
      "/grades.cgi",
      "/forum/list.cgi",
      "/img/banner.gif",
      "/css/site.css",
  };
  return paths;
}

struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen) < p;
  }
  std::size_t count(const CountDist &d) {
    if (d.mean <= 0.0)
      return 0;
    double var = d.spread * d.spread;
    if (var > d.mean) {
      int k = std::max(1, static_cast<int>(std::lround(
                              d.mean * d.mean / (var - d.mean))));
      double p = static_cast<double>(k) / (static_cast<double>(k) + d.mean);
      return static_cast<std::size_t>(
          std::negative_binomial_distribution<int>(k, p)(gen));
    }
    return static_cast<std::size_t>(
        std::poisson_distribution<int>(d.mean)(gen));
  }
};

std::string campus_host(std::size_t k) {
  return "10.1." + std::to_string(k / 250) + "." +
         std::to_string(k % 250 + 1);
}

std::string offcampus_host(std::size_t k) {
  return "24." + std::to_string(10 + k / 62500) + "." +
         std::to_string(k / 250 % 250) + "." + std::to_string(k % 250 + 1);
}

std::string listed_robot_host(std::size_t k) {
  return "66.249." + std::to_string(64 + k % 32) + "." +
         std::to_string(1 + k / 32);
}

std::string stealth_robot_host(std::size_t k) {
  return "207.46.13." + std::to_string(1 + k);
}

struct PendingRecord {
  std::int64_t epoch;
  std::size_t seq;
  logs::LogRecord rec;
};

logs::LogRecord make_record(const std::string &host, std::int64_t epoch,
                            std::string path, int status,
                            std::uint64_t bytes) {
  logs::LogRecord rec;
  rec.host = host;
  rec.time = civil_from_epoch(epoch, kZoneMinutes);
  rec.method = "GET";
  rec.path = std::move(path);
  rec.protocol = "HTTP/1.1";
  rec.status = status;
  rec.bytes = bytes;
  return rec;
}

// One student's visit: start second-of-window plus per-request offsets and
// which requests fetch a class note.
struct VisitPlan {
  std::int64_t start = 0;
  std::vector<std::int64_t> offsets;
  std::vector<bool> is_note;
};

std::int64_t pick_day(Rng &rng, std::size_t weeks, bool lab,
                      const std::set<std::int64_t> &used) {
  auto sample = [&] {
    std::int64_t week = static_cast<std::int64_t>(rng.below(weeks));
    std::int64_t dow;
    if (lab) {
      dow = rng.chance(0.5) ? 1 : 3; // Tuesday or Thursday
    } else {
      static const std::int64_t other[5] = {0, 2, 4, 5, 6};
      dow = other[rng.below(5)];
    }
    return week * 7 + dow;
  };
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::int64_t day = sample();
    if (!used.count(day))
      return day;
  }
  // fall back to a scan so a crowded calendar stays collision-free
  std::int64_t days = static_cast<std::int64_t>(weeks) * 7;
  for (std::int64_t day = 0; day < days; ++day)
    if (!used.count(day))
      return day;
  return sample(); // every day taken; the gap guard will separate them
}

} // namespace

std::string archetype_name(Archetype a) {
  switch (a) {
  case Archetype::Regular:
    return "Regular";
  case Archetype::Worker:
    return "Worker";
  case Archetype::Bad:
    return "Bad";
  case Archetype::Casual:
    return "Casual";
  case Archetype::Absent:
    return "Absent";
  }
  return "Unknown";
}

TrafficSpec default_spec() {
  TrafficSpec spec;
  spec.archetypes = {
      {Archetype::Regular, 60, 2.0, {7.0, 2.0}, {4.0, 1.5}, 0.25, 0.60, 0.30},
      {Archetype::Worker, 100, 3.0, {2.0, 1.0}, {1.0, 0.5}, 0.85, 0.90, 0.75},
      {Archetype::Bad, 15, 1.0, {18.0, 4.0}, {13.0, 3.0}, 0.40, 0.35, 0.20},
      {Archetype::Casual, 30, 0.5, {2.0, 1.0}, {0.0, 0.0}, 0.20, 0.55, 0.30},
      {Archetype::Absent, 10, 0.0, {0.0, 0.0}, {0.0, 0.0}, 0.0, 0.0, 0.0},
  };
  return spec;
}

void validate(const TrafficSpec &spec) {
  if (spec.weeks < 1)
    throw InvalidSpec("weeks must be at least 1");
  if (spec.robot_hits_per_host < 0.0)
    throw InvalidSpec("robot_hits_per_host must be non-negative");

  double regular_dl = -1.0, bad_dl = -1.0;
  for (const auto &a : spec.archetypes) {
    for (double p : {a.campus_prob, a.daytime_prob, a.labday_prob})
      if (p < 0.0 || p > 1.0)
        throw InvalidSpec(archetype_name(a.name) +
                          " probability outside [0,1]");
    if (a.visit_rate < 0.0)
      throw InvalidSpec(archetype_name(a.name) + " visit_rate negative");
    if (a.hits_per_visit.mean < 0.0 || a.hits_per_visit.spread < 0.0 ||
        a.downloads_per_visit.mean < 0.0 || a.downloads_per_visit.spread < 0.0)
      throw InvalidSpec(archetype_name(a.name) +
                        " count distribution parameter negative");
    if (a.name == Archetype::Casual && a.downloads_per_visit.mean != 0.0)
      throw InvalidSpec("Casual archetype must have zero download mean");
    if (a.name == Archetype::Regular && a.count > 0)
      regular_dl = std::max(regular_dl, a.downloads_per_visit.mean);
    if (a.name == Archetype::Bad && a.count > 0)
      bad_dl = std::max(bad_dl, a.downloads_per_visit.mean);
  }
  if (regular_dl >= 0.0 && bad_dl >= 0.0 && bad_dl <= regular_dl)
    throw InvalidSpec(
        "Bad archetype download mean must exceed Regular's");
}

SynthResult generate(const TrafficSpec &spec, std::uint64_t seed) {
  validate(spec);
  Rng rng(seed);
  SynthResult result;
  result.truth.header = {"host", "archetype"};

  std::vector<PendingRecord> pending;
  std::size_t seq = 0;
  std::size_t campus_ix = 0, offcampus_ix = 0;
  std::int64_t window_days = static_cast<std::int64_t>(spec.weeks) * 7;

  auto push = [&](const std::string &host, std::int64_t epoch,
                  std::string path, int status, std::uint64_t bytes) {
    pending.push_back(
        {epoch, seq++, make_record(host, epoch, std::move(path), status,
                                   bytes)});
  };

  auto page_request = [&](const std::string &host, std::int64_t epoch) {
    const auto &pool = page_paths();
    std::string path = pool[rng.below(pool.size())];
    std::uint64_t roll = rng.below(100);
    if (roll < 85)
      push(host, epoch, std::move(path), 200, 400 + rng.below(29600));
    else if (roll < 95)
      push(host, epoch, std::move(path), 304, 0);
    else
      push(host, epoch, std::move(path), 404, 200 + rng.below(400));
  };

  auto note_request = [&](const std::string &host, std::int64_t epoch) {
    const auto &pool = notes_paths();
    push(host, epoch, pool[rng.below(pool.size())], 200,
         50000 + rng.below(1950000));
  };

  for (const auto &arche : spec.archetypes) {
    std::string name = archetype_name(arche.name);
    result.visits_by_archetype.emplace(name, 0);
    for (std::size_t s = 0; s < arche.count; ++s) {
      bool on_campus = rng.chance(arche.campus_prob);
      std::string host =
          on_campus ? campus_host(campus_ix++) : offcampus_host(offcampus_ix++);
      result.truth.rows.push_back({host, name});
      if (arche.name == Archetype::Absent)
        continue;

      std::size_t n_visits = 0;
      if (arche.visit_rate > 0.0)
        n_visits = rng.count({arche.visit_rate * spec.weeks, 0.0});
      if (n_visits == 0)
        continue;

      std::set<std::int64_t> used_days;
      std::vector<VisitPlan> plans;
      for (std::size_t v = 0; v < n_visits; ++v) {
        bool lab = rng.chance(arche.labday_prob);
        std::int64_t day = pick_day(rng, spec.weeks, lab, used_days);
        used_days.insert(day);

        bool daytime = rng.chance(arche.daytime_prob);
        std::int64_t hour;
        if (daytime) {
          hour = 8 + static_cast<std::int64_t>(rng.below(12));
        } else {
          std::int64_t r = static_cast<std::int64_t>(rng.below(12));
          hour = r < 8 ? r : 12 + r;
        }

        VisitPlan plan;
        plan.start = day * kDaySeconds + hour * 3600 +
                     static_cast<std::int64_t>(rng.below(60)) * 60 +
                     static_cast<std::int64_t>(rng.below(60));

        std::size_t hits = std::max<std::size_t>(1, rng.count(arche.hits_per_visit));
        std::size_t downloads = 0;
        if (arche.name != Archetype::Casual) {
          downloads = std::max<std::size_t>(1, rng.count(arche.downloads_per_visit));
          downloads = std::min(downloads, hits);
        }

        std::int64_t offset = 0;
        plan.offsets.resize(hits);
        for (std::size_t h = 0; h < hits; ++h) {
          plan.offsets[h] = offset;
          offset += 1 + static_cast<std::int64_t>(rng.below(90));
        }
        plan.is_note.assign(hits, false);
        // partial Fisher-Yates picks the download slots
        std::vector<std::size_t> slots(hits);
        for (std::size_t h = 0; h < hits; ++h)
          slots[h] = h;
        for (std::size_t d = 0; d < downloads; ++d) {
          std::size_t pick = d + rng.below(hits - d);
          std::swap(slots[d], slots[pick]);
          plan.is_note[slots[d]] = true;
        }
        plans.push_back(std::move(plan));
      }

      std::sort(plans.begin(), plans.end(),
                [](const VisitPlan &a, const VisitPlan &b) {
                  return a.start < b.start;
                });
      for (std::size_t v = 1; v < plans.size(); ++v) {
        std::int64_t prev_end =
            plans[v - 1].start + plans[v - 1].offsets.back();
        if (plans[v].start < prev_end + kMinVisitGap)
          plans[v].start = prev_end + kMinVisitGap;
      }

      for (const auto &plan : plans) {
        for (std::size_t h = 0; h < plan.offsets.size(); ++h) {
          std::int64_t epoch = kWindowStart + plan.start + plan.offsets[h];
          if (plan.is_note[h])
            note_request(host, epoch);
          else
            page_request(host, epoch);
        }
      }
      result.student_visits += plans.size();
      result.visits_by_archetype[name] += plans.size();
    }
  }

  auto robot_burst = [&](const std::string &host, bool stealth) {
    result.truth.rows.push_back({host, "Robot"});
    std::size_t n = rng.count({spec.robot_hits_per_host, 0.0});
    if (stealth)
      n = std::max<std::size_t>(1, n);
    for (std::size_t r = 0; r < n; ++r) {
      std::int64_t epoch =
          kWindowStart +
          static_cast<std::int64_t>(rng.below(window_days * kDaySeconds));
      std::string path;
      if (stealth && r == 0) {
        path = "/robots.txt";
      } else if (rng.chance(0.3)) {
        const auto &pool = notes_paths();
        path = pool[rng.below(pool.size())];
      } else {
        const auto &pool = page_paths();
        path = pool[rng.below(pool.size())];
      }
      push(host, epoch, std::move(path), 200, 400 + rng.below(49600));
      ++result.robot_hits;
    }
  };

  for (std::size_t k = 0; k < spec.listed_robot_hosts; ++k)
    robot_burst(listed_robot_host(k), false);
  for (std::size_t k = 0; k < spec.stealth_robot_hosts; ++k)
    robot_burst(stealth_robot_host(k), true);

  std::sort(pending.begin(), pending.end(),
            [](const PendingRecord &a, const PendingRecord &b) {
              if (a.epoch != b.epoch)
                return a.epoch < b.epoch;
              return a.seq < b.seq;
            });
  result.lines.reserve(pending.size());
  for (const auto &p : pending)
    result.lines.push_back(logs::format_line(p.rec));
  return result;
}

} // namespace elmine::synth
