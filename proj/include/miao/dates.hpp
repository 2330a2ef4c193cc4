#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace miao {

/// Calendar date on the proleptic Gregorian calendar.
///
/// Stored as a day count since 1970-01-01 so that day arithmetic and
/// comparisons are trivial; year/month/day views are computed on demand.
class Date {
 public:
  Date() = default;
  Date(int year, int month, int day);  // throws std::invalid_argument

  static Date from_days(std::int64_t days_since_epoch);
  static std::optional<Date> parse(std::string_view text);  // "YYYY-MM-DD"

  std::int64_t days() const { return days_; }
  int year() const;
  int month() const;
  int day() const;
  int weekday() const;  // 0 = Monday ... 6 = Sunday

  Date add_days(std::int64_t n) const { return from_days(days_ + n); }
  /// Civil-year shift; Feb 29 clamps to Feb 28 on non-leap years.
  Date add_years(int n) const;

  std::string to_string() const;

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::int64_t days_ = 0;
};

inline std::int64_t operator-(Date a, Date b) { return a.days() - b.days(); }

/// Largest k >= 0 with a + k years <= b; negative spans return -1.
int whole_years_between(Date a, Date b);

/// Instant parsed from an ISO-8601 timestamp, normalized to UTC.
struct Timestamp {
  std::int64_t unix_seconds = 0;

  /// Calendar date of this instant in a fixed-offset zone.
  Date civil_date(int utc_offset_minutes = 0) const;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Accepts "YYYY-MM-DD[ T]hh:mm:ss[.frac][Z|+hh:mm|-hh:mm|+hhmm|+hh]" and
/// bare dates (midnight UTC). Returns nullopt on malformed input.
std::optional<Timestamp> parse_iso8601(std::string_view text);

}  // namespace miao
