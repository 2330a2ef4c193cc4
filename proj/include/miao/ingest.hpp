#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "miao/dates.hpp"

namespace miao {

struct CommitRecord {
  std::string author;
  Timestamp timestamp;
};

struct ParseDiagnostic {
  std::size_t line = 0;
  std::string message;
};

struct ParsedLog {
  std::vector<CommitRecord> records;
  std::vector<ParseDiagnostic> diagnostics;
};

/// Parses `author|ISO-8601 timestamp` lines (one commit per line), e.g. the
/// output of `git log --pretty=format:'%an|%aI'`. Malformed lines become
/// diagnostics with their 1-based line number; blank lines are skipped.
ParsedLog parse_commit_log(std::istream& in);

/// Drops records whose author contains the literal substring "[bot]".
std::vector<CommitRecord> filter_bots(std::vector<CommitRecord> records);

/// Daily commit counts for one project over a gap-free calendar range.
struct ActivitySeries {
  std::string project_id;
  Date start_date;
  std::vector<std::int64_t> counts;  // one entry per consecutive day, all >= 0

  Date end_date() const { return start_date.add_days(static_cast<std::int64_t>(counts.size()) - 1); }
  std::int64_t size() const { return static_cast<std::int64_t>(counts.size()); }

  /// Sum of counts over [from, to] clipped to the series range (inclusive).
  std::int64_t total_between(Date from, Date to) const;
  std::int64_t total() const { return total_between(start_date, end_date()); }

  /// Counts over [from, to] as doubles; both endpoints must lie in range.
  std::vector<double> window(Date from, Date to) const;
  bool covers(Date from, Date to) const { return from >= start_date && to <= end_date(); }
};

/// Buckets records into daily counts over [start, end] (inclusive); the
/// calendar day is taken in a fixed-offset zone, UTC by default. Records
/// outside the range are ignored.
ActivitySeries aggregate_daily(std::span<const CommitRecord> records, std::string project_id,
                               Date start, Date end, int utc_offset_minutes = 0);

/// Earliest date whose trailing 365-day commit total, divided by 12, falls
/// below `monthly_threshold`; nullopt if no such date. Requires >= 365 days.
std::optional<Date> detect_end_date(const ActivitySeries& series, double monthly_threshold = 1.5);

struct GroupManifest {
  int group_id = 0;
  std::string target;
  std::string competitor1;
  std::string competitor2;
  bool rev = false;
  Date start_date;
  Date end_date;
  int split_count = 1;
};

/// CSV with header `group,target,competitor1,competitor2,rev,start_date,end_date,splits`.
std::vector<GroupManifest> load_manifest(const std::filesystem::path& path);
void save_manifest(const std::vector<GroupManifest>& groups, const std::filesystem::path& path);

/// In-memory collection of activity series keyed by project id.
class SeriesStore {
 public:
  void add(ActivitySeries series);
  const ActivitySeries* find(const std::string& project_id) const;
  /// Throws naming the project when absent.
  const ActivitySeries& at(const std::string& project_id) const;
  std::size_t size() const { return series_.size(); }
  std::vector<std::string> ids() const;

  /// Directory of `<encoded-id>.csv` files with header `date,count`; missing
  /// days inside a file's range are zero-filled.
  static SeriesStore load_dir(const std::filesystem::path& dir);
  void save_dir(const std::filesystem::path& dir) const;

  static ActivitySeries load_csv(const std::filesystem::path& file, std::string project_id);
  static void save_csv(const ActivitySeries& series, const std::filesystem::path& file);

  static std::string encode_id(const std::string& project_id);  // '/' -> "__"
  static std::string decode_id(const std::string& file_stem);

 private:
  std::map<std::string, ActivitySeries> series_;
};

struct ValidatedGroup {
  GroupManifest manifest;  // competitors possibly swapped into canonical order
  bool swapped = false;
  std::vector<std::string> warnings;
};

struct GroupValidation {
  std::optional<ValidatedGroup> group;  // nullopt when rejected
  std::string rejection;                // reason when rejected
};

/// Checks the manifest invariants against the stored series: all three series
/// present and covering [start, end], pairwise overlap of at least 365 days,
/// and competitor1 having at least as many commits as competitor2 over the
/// three-way overlap (violations of the last rule are repaired by swapping).
/// Missing series throw; other violations reject with a reason.
GroupValidation validate_group(const GroupManifest& manifest, const SeriesStore& store);

}  // namespace miao
