#include "crisispulse/timeutil.hpp"

#include <cstdio>

namespace crisispulse {

namespace {

bool parse_fixed_int(std::string_view s, std::size_t pos, int width, int& out) {
  if (pos + width > s.size()) return false;
  int v = 0;
  for (int k = 0; k < width; ++k) {
    const char c = s[pos + k];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

}  // namespace

bool is_leap_year(int y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
  static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap_year(y)) return 29;
  return kDays[m - 1];
}

bool valid_date(int y, int m, int d) {
  return m >= 1 && m <= 12 && d >= 1 && d <= days_in_month(y, m);
}

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

Date next_day(const Date& d) {
  return civil_from_days(days_from_civil(d.year, d.month, d.day) + 1);
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::string LocalTimestamp::to_string() const {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", year, month,
                day, hour, minute, second);
  return buf;
}

std::string LocalTimestamp::month_key() const {
  char buf[12];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

std::int64_t LocalTimestamp::epoch_seconds() const {
  return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 +
         second - kUtcOffsetMinutes * 60;
}

std::optional<Date> parse_date(std::string_view s) {
  int y, m, d;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!parse_fixed_int(s, 0, 4, y) || !parse_fixed_int(s, 5, 2, m) ||
      !parse_fixed_int(s, 8, 2, d)) {
    return std::nullopt;
  }
  if (!valid_date(y, m, d)) return std::nullopt;
  return Date{y, m, d};
}

std::optional<LocalTimestamp> parse_timestamp(std::string_view s) {
  // Date part.
  int y, mo, d, h, mi, se;
  if (s.size() < 19 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!parse_fixed_int(s, 0, 4, y) || !parse_fixed_int(s, 5, 2, mo) ||
      !parse_fixed_int(s, 8, 2, d)) {
    return std::nullopt;
  }
  if (s[10] != ' ' && s[10] != 'T') return std::nullopt;
  if (s[13] != ':' || s[16] != ':') return std::nullopt;
  if (!parse_fixed_int(s, 11, 2, h) || !parse_fixed_int(s, 14, 2, mi) ||
      !parse_fixed_int(s, 17, 2, se)) {
    return std::nullopt;
  }
  if (!valid_date(y, mo, d) || h > 23 || mi > 59 || se > 60) return std::nullopt;
  if (se == 60) se = 59;  // clamp leap seconds

  int offset_minutes = kUtcOffsetMinutes;  // bare layout: already local
  const std::string_view rest = s.substr(19);
  if (rest == "Z" || rest == "z") {
    offset_minutes = 0;
  } else if (!rest.empty()) {
    if (rest.size() != 6 || (rest[0] != '+' && rest[0] != '-') || rest[3] != ':') {
      return std::nullopt;
    }
    int oh, om;
    if (!parse_fixed_int(rest, 1, 2, oh) || !parse_fixed_int(rest, 4, 2, om)) {
      return std::nullopt;
    }
    if (oh > 14 || om > 59) return std::nullopt;
    offset_minutes = oh * 60 + om;
    if (rest[0] == '-') offset_minutes = -offset_minutes;
  }

  // Shift to +03:00.
  std::int64_t secs = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
  secs += (kUtcOffsetMinutes - offset_minutes) * 60;
  std::int64_t days = secs / 86400;
  std::int64_t tod = secs % 86400;
  if (tod < 0) {
    tod += 86400;
    --days;
  }
  const Date date = civil_from_days(days);
  return LocalTimestamp{date.year,
                        date.month,
                        date.day,
                        static_cast<int>(tod / 3600),
                        static_cast<int>((tod % 3600) / 60),
                        static_cast<int>(tod % 60)};
}

}  // namespace crisispulse
