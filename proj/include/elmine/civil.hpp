#pragma once

#include <cstdint>

namespace elmine {

// Days since 1970-01-01 in the proleptic Gregorian calendar
// (Howard Hinnant's days_from_civil).
constexpr std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

// 0 = Sunday .. 6 = Saturday.
constexpr int weekday_from_days(std::int64_t days) {
  return static_cast<int>(days >= -4 ? (days + 4) % 7 : (days + 5) % 7 + 6);
}

// Wall-clock date/time with a fixed UTC offset, as logged by the server.
struct CivilTime {
  int year = 1970;
  int month = 1; // 1..12
  int day = 1;   // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
  int offset_minutes = 0; // local = UTC + offset

  constexpr std::int64_t epoch_seconds() const {
    return days_from_civil(year, month, day) * 86400 + hour * 3600 +
           minute * 60 + second - std::int64_t{offset_minutes} * 60;
  }

  // Weekday of the local date (class schedules are local time).
  constexpr int weekday() const {
    return weekday_from_days(days_from_civil(year, month, day));
  }

  bool operator==(const CivilTime &) const = default;
};

// Re-derives the wall clock for `epoch + offset_minutes` (civil_from_days
// inverse of the above).
CivilTime civil_from_epoch(std::int64_t epoch_seconds, int offset_minutes);

} // namespace elmine
