#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "elmine/csv.hpp"

namespace elmine::synth {

enum class Archetype { Regular, Worker, Bad, Casual, Absent };

std::string archetype_name(Archetype a);

// Integer count distribution: negative binomial when spread^2 exceeds the
// mean, Poisson otherwise.
struct CountDist {
  double mean = 0.0;
  double spread = 0.0;
};

struct ArchetypeSpec {
  Archetype name = Archetype::Regular;
  std::size_t count = 0;   // simulated students
  double visit_rate = 0.0; // mean visits per student per week
  CountDist hits_per_visit;
  CountDist downloads_per_visit;
  double campus_prob = 0.0;  // chance a student's stable IP is on campus
  double daytime_prob = 0.0; // chance a visit starts between 8:00 and 20:00
  double labday_prob = 0.0;  // chance a visit falls on a lab weekday
};

struct TrafficSpec {
  std::vector<ArchetypeSpec> archetypes;
  std::size_t weeks = 16;
  // Crawler noise: listed hosts live inside a well-known robot CIDR; stealth
  // hosts are only identifiable by their robots.txt fetches.
  std::size_t listed_robot_hosts = 4;
  std::size_t stealth_robot_hosts = 4;
  double robot_hits_per_host = 50.0;
};

struct SynthResult {
  std::vector<std::string> lines; // time-ordered CLF lines
  csv::Table truth;               // host,archetype for every simulated actor
  std::size_t robot_hits = 0;     // planted crawler record count
  std::size_t student_visits = 0; // planted visit count over all archetypes
  std::map<std::string, std::size_t> visits_by_archetype;
};

// The five student archetypes plus robot noise, tuned so the three active
// classes separate in feature space.
TrafficSpec default_spec();

// Throws InvalidSpec on out-of-range probabilities, a Casual archetype with
// a nonzero download mean, or a Bad archetype whose download mean does not
// exceed Regular's.
void validate(const TrafficSpec &spec);

// Deterministic for a given (spec, seed). Student visits are scheduled on
// distinct days with at least 35 minutes between them, so a 30-minute
// session timeout recovers exactly the planted visits.
SynthResult generate(const TrafficSpec &spec, std::uint64_t seed);

} // namespace elmine::synth
