#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Calendar arithmetic for the fixed-offset wall clock the corpus uses
// (UTC+03:00). No system time zones involved anywhere.

namespace crisispulse {

inline constexpr int kUtcOffsetMinutes = 180;  // +03:00

struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31

  std::string to_string() const;  // "YYYY-MM-DD"
  auto operator<=>(const Date&) const = default;
};

// Wall-clock timestamp at +03:00, second precision.
struct LocalTimestamp {
  int year = 0;
  int month = 0;
  int day = 0;
  int hour = 0;
  int minute = 0;
  int second = 0;

  Date date() const { return {year, month, day}; }
  std::string to_string() const;        // "YYYY-MM-DD HH:MM:SS"
  std::string month_key() const;        // "YYYY-MM"
  std::int64_t epoch_seconds() const;   // seconds since 1970-01-01 00:00 at +03:00
  auto operator<=>(const LocalTimestamp&) const = default;
};

bool is_leap_year(int y);
int days_in_month(int y, int m);
bool valid_date(int y, int m, int d);

// Days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d);
Date civil_from_days(std::int64_t z);

Date next_day(const Date& d);

// "YYYY-MM-DD" only.
std::optional<Date> parse_date(std::string_view s);

// Accepted layouts, all with second precision:
//   "YYYY-MM-DD HH:MM:SS"        (taken as already +03:00)
//   "YYYY-MM-DDTHH:MM:SS+HH:MM"  (any fixed offset; converted to +03:00)
//   "YYYY-MM-DDTHH:MM:SSZ"       (UTC; converted to +03:00)
// 'T' and ' ' separators are interchangeable.
std::optional<LocalTimestamp> parse_timestamp(std::string_view s);

}  // namespace crisispulse
