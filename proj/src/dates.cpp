#include "miao/dates.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace miao {

namespace {

constexpr bool is_leap(int y) {
  return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

constexpr int days_in_month(int y, int m) {
  constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return (m == 2 && is_leap(y)) ? 29 : kDays[m - 1];
}

// Civil <-> day-count conversions (Howard Hinnant's algorithms).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
  int y;
  int m;
  int d;
};

Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Date::Date(int year, int month, int day) {
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
    throw std::invalid_argument("invalid calendar date");
  }
  days_ = days_from_civil(year, month, day);
}

Date Date::from_days(std::int64_t days_since_epoch) {
  Date d;
  d.days_ = days_since_epoch;
  return d;
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) return std::nullopt;
  return Date(y, m, d);
}

int Date::year() const { return civil_from_days(days_).y; }
int Date::month() const { return civil_from_days(days_).m; }
int Date::day() const { return civil_from_days(days_).d; }

int Date::weekday() const {
  // 1970-01-01 was a Thursday (ISO weekday 3 with Monday = 0).
  std::int64_t w = (days_ + 3) % 7;
  if (w < 0) w += 7;
  return static_cast<int>(w);
}

Date Date::add_years(int n) const {
  const Civil c = civil_from_days(days_);
  const int y = c.y + n;
  const int d = std::min(c.d, days_in_month(y, c.m));
  return Date(y, c.m, d);
}

std::string Date::to_string() const {
  const Civil c = civil_from_days(days_);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", c.y, c.m, c.d);
  return buf;
}

int whole_years_between(Date a, Date b) {
  if (b < a) return -1;
  int k = static_cast<int>((b - a) / 365) + 1;
  while (k > 0 && a.add_years(k) > b) --k;
  return k;
}

Date Timestamp::civil_date(int utc_offset_minutes) const {
  const std::int64_t shifted = unix_seconds + static_cast<std::int64_t>(utc_offset_minutes) * 60;
  return Date::from_days(floor_div(shifted, 86400));
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  // Date part.
  if (text.size() < 10) return std::nullopt;
  const auto date = Date::parse(text.substr(0, 10));
  if (!date) return std::nullopt;
  std::int64_t seconds = date->days() * 86400;
  text.remove_prefix(10);
  if (text.empty()) return Timestamp{seconds};

  if (text[0] != 'T' && text[0] != 't' && text[0] != ' ') return std::nullopt;
  text.remove_prefix(1);
  if (text.size() < 8 || text[2] != ':' || text[5] != ':') return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (!parse_int(text.substr(0, 2), hh) || !parse_int(text.substr(3, 2), mm) ||
      !parse_int(text.substr(6, 2), ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;  // allow leap second
  seconds += hh * 3600 + mm * 60 + ss;
  text.remove_prefix(8);

  // Optional fractional seconds, truncated.
  if (!text.empty() && text[0] == '.') {
    std::size_t i = 1;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == 1) return std::nullopt;
    text.remove_prefix(i);
  }

  if (text.empty()) return Timestamp{seconds};  // no zone: treat as UTC
  if (text == "Z" || text == "z") return Timestamp{seconds};

  const char sign_ch = text[0];
  if (sign_ch != '+' && sign_ch != '-') return std::nullopt;
  text.remove_prefix(1);
  int oh = 0, om = 0;
  if (text.size() == 5 && text[2] == ':') {
    if (!parse_int(text.substr(0, 2), oh) || !parse_int(text.substr(3, 2), om)) return std::nullopt;
  } else if (text.size() == 4) {
    if (!parse_int(text.substr(0, 2), oh) || !parse_int(text.substr(2, 2), om)) return std::nullopt;
  } else if (text.size() == 2) {
    if (!parse_int(text, oh)) return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (oh > 18 || om > 59) return std::nullopt;
  const std::int64_t offset = (sign_ch == '+' ? 1 : -1) * (oh * 3600 + om * 60);
  return Timestamp{seconds - offset};
}

}  // namespace miao
