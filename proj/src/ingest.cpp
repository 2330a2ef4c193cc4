#include "miao/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace miao {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(pos)));
      break;
    }
    out.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

std::int64_t parse_count(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
    throw std::runtime_error("invalid count value '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

ParsedLog parse_commit_log(std::istream& in) {
  ParsedLog out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    const std::size_t bar = view.rfind('|');
    if (bar == std::string_view::npos) {
      out.diagnostics.push_back({line_no, "missing '|' separator"});
      continue;
    }
    std::string_view author = trim(view.substr(0, bar));
    std::string_view stamp = trim(view.substr(bar + 1));
    if (author.empty()) {
      out.diagnostics.push_back({line_no, "empty author"});
      continue;
    }
    const auto ts = parse_iso8601(stamp);
    if (!ts) {
      out.diagnostics.push_back({line_no, "unparseable timestamp '" + std::string(stamp) + "'"});
      continue;
    }
    out.records.push_back({std::string(author), *ts});
  }
  return out;
}

std::vector<CommitRecord> filter_bots(std::vector<CommitRecord> records) {
  std::erase_if(records, [](const CommitRecord& r) {
    return r.author.find("[bot]") != std::string::npos;
  });
  return records;
}

std::int64_t ActivitySeries::total_between(Date from, Date to) const {
  const std::int64_t lo = std::max<std::int64_t>(0, from - start_date);
  const std::int64_t hi = std::min<std::int64_t>(size() - 1, to - start_date);
  std::int64_t sum = 0;
  for (std::int64_t i = lo; i <= hi; ++i) sum += counts[static_cast<std::size_t>(i)];
  return sum;
}

std::vector<double> ActivitySeries::window(Date from, Date to) const {
  if (!covers(from, to) || to < from) {
    throw std::out_of_range("window [" + from.to_string() + ", " + to.to_string() +
                            "] outside series " + project_id);
  }
  const std::int64_t lo = from - start_date;
  const std::int64_t n = to - from + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<double>(counts[static_cast<std::size_t>(lo + i)]);
  }
  return out;
}

ActivitySeries aggregate_daily(std::span<const CommitRecord> records, std::string project_id,
                               Date start, Date end, int utc_offset_minutes) {
  if (end < start) throw std::invalid_argument("aggregate_daily: empty date range");
  ActivitySeries series;
  series.project_id = std::move(project_id);
  series.start_date = start;
  series.counts.assign(static_cast<std::size_t>(end - start + 1), 0);
  for (const CommitRecord& r : records) {
    const Date day = r.timestamp.civil_date(utc_offset_minutes);
    if (day < start || day > end) continue;
    ++series.counts[static_cast<std::size_t>(day - start)];
  }
  return series;
}

std::optional<Date> detect_end_date(const ActivitySeries& series, double monthly_threshold) {
  if (series.size() < 365) {
    throw std::invalid_argument("detect_end_date: series shorter than 365 days");
  }
  std::int64_t window_sum = 0;
  for (std::size_t i = 0; i < 365; ++i) window_sum += series.counts[i];
  for (std::size_t i = 364; i < series.counts.size(); ++i) {
    if (i > 364) {
      window_sum += series.counts[i];
      window_sum -= series.counts[i - 365];
    }
    if (static_cast<double>(window_sum) / 12.0 < monthly_threshold) {
      return series.start_date.add_days(static_cast<std::int64_t>(i));
    }
  }
  return std::nullopt;
}

std::vector<GroupManifest> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty manifest " + path.string());
  const auto header = split_csv(line);
  const std::vector<std::string_view> expected{"group",       "target",   "competitor1",
                                               "competitor2", "rev",      "start_date",
                                               "end_date",    "splits"};
  if (std::vector<std::string_view>(header.begin(), header.end()) != expected) {
    throw std::runtime_error("manifest header mismatch in " + path.string());
  }
  std::vector<GroupManifest> groups;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cols = split_csv(line);
    if (cols.size() != 8) {
      throw std::runtime_error("manifest line " + std::to_string(line_no) + ": expected 8 columns");
    }
    GroupManifest g;
    try {
      g.group_id = std::stoi(std::string(cols[0]));
      g.target = std::string(cols[1]);
      g.competitor1 = std::string(cols[2]);
      g.competitor2 = std::string(cols[3]);
      if (cols[4] != "0" && cols[4] != "1") throw std::runtime_error("rev must be 0 or 1");
      g.rev = cols[4] == "1";
      const auto start = Date::parse(cols[5]);
      const auto end = Date::parse(cols[6]);
      if (!start || !end) throw std::runtime_error("bad date");
      g.start_date = *start;
      g.end_date = *end;
      g.split_count = std::stoi(std::string(cols[7]));
      if (g.split_count < 1) throw std::runtime_error("splits must be >= 1");
    } catch (const std::exception& e) {
      throw std::runtime_error("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

void save_manifest(const std::vector<GroupManifest>& groups, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << "group,target,competitor1,competitor2,rev,start_date,end_date,splits\n";
  for (const GroupManifest& g : groups) {
    out << g.group_id << ',' << g.target << ',' << g.competitor1 << ',' << g.competitor2 << ','
        << (g.rev ? 1 : 0) << ',' << g.start_date.to_string() << ',' << g.end_date.to_string()
        << ',' << g.split_count << '\n';
  }
}

void SeriesStore::add(ActivitySeries series) {
  if (series.counts.empty()) throw std::invalid_argument("empty activity series");
  for (const std::int64_t c : series.counts) {
    if (c < 0) throw std::invalid_argument("negative count in series " + series.project_id);
  }
  series_[series.project_id] = std::move(series);
}

const ActivitySeries* SeriesStore::find(const std::string& project_id) const {
  const auto it = series_.find(project_id);
  return it == series_.end() ? nullptr : &it->second;
}

const ActivitySeries& SeriesStore::at(const std::string& project_id) const {
  const ActivitySeries* s = find(project_id);
  if (!s) throw std::runtime_error("missing series for project '" + project_id + "'");
  return *s;
}

std::vector<std::string> SeriesStore::ids() const {
  std::vector<std::string> out;
  out.reserve(series_.size());
  for (const auto& [id, _] : series_) out.push_back(id);
  return out;
}

std::string SeriesStore::encode_id(const std::string& project_id) {
  std::string out;
  out.reserve(project_id.size());
  for (const char c : project_id) {
    if (c == '/') {
      out += "__";
    } else {
      out += c;
    }
  }
  return out;
}

std::string SeriesStore::decode_id(const std::string& file_stem) {
  std::string out;
  for (std::size_t i = 0; i < file_stem.size(); ++i) {
    if (file_stem[i] == '_' && i + 1 < file_stem.size() && file_stem[i + 1] == '_') {
      out += '/';
      ++i;
    } else {
      out += file_stem[i];
    }
  }
  return out;
}

ActivitySeries SeriesStore::load_csv(const std::filesystem::path& file, std::string project_id) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open series file " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty series file " + file.string());
  const auto header = split_csv(line);
  if (header.size() != 2 || header[0] != "date" || header[1] != "count") {
    throw std::runtime_error("series header must be 'date,count' in " + file.string());
  }
  std::map<Date, std::int64_t> by_day;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cols = split_csv(line);
    if (cols.size() != 2) {
      throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": expected 2 columns");
    }
    const auto day = Date::parse(cols[0]);
    if (!day) {
      throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": bad date");
    }
    by_day[*day] += parse_count(cols[1]);
  }
  if (by_day.empty()) throw std::runtime_error("series file has no rows: " + file.string());
  ActivitySeries series;
  series.project_id = std::move(project_id);
  series.start_date = by_day.begin()->first;
  const Date last = by_day.rbegin()->first;
  series.counts.assign(static_cast<std::size_t>(last - series.start_date + 1), 0);
  for (const auto& [day, count] : by_day) {
    series.counts[static_cast<std::size_t>(day - series.start_date)] = count;
  }
  return series;
}

void SeriesStore::save_csv(const ActivitySeries& series, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write series file " + file.string());
  out << "date,count\n";
  for (std::size_t i = 0; i < series.counts.size(); ++i) {
    out << series.start_date.add_days(static_cast<std::int64_t>(i)).to_string() << ','
        << series.counts[i] << '\n';
  }
}

SeriesStore SeriesStore::load_dir(const std::filesystem::path& dir) {
  SeriesStore store;
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("series directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    store.add(load_csv(file, decode_id(file.stem().string())));
  }
  return store;
}

void SeriesStore::save_dir(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [id, series] : series_) {
    save_csv(series, dir / (encode_id(id) + ".csv"));
  }
}

GroupValidation validate_group(const GroupManifest& manifest, const SeriesStore& store) {
  GroupValidation result;
  const ActivitySeries& target = store.at(manifest.target);
  const ActivitySeries& c1 = store.at(manifest.competitor1);
  const ActivitySeries& c2 = store.at(manifest.competitor2);

  if (!(manifest.start_date < manifest.end_date)) {
    result.rejection = "start_date must precede end_date";
    return result;
  }

  const Date overlap_start =
      std::max({target.start_date, c1.start_date, c2.start_date});
  const Date overlap_end = std::min({target.end_date(), c1.end_date(), c2.end_date()});
  const std::int64_t overlap_days = overlap_end - overlap_start + 1;
  if (overlap_days < 365) {
    result.rejection = "series overlap is " + std::to_string(std::max<std::int64_t>(0, overlap_days)) +
                       " days, below the 365-day minimum";
    return result;
  }

  for (const ActivitySeries* s : {&target, &c1, &c2}) {
    if (!s->covers(manifest.start_date, manifest.end_date)) {
      result.rejection = "series " + s->project_id + " does not cover [" +
                         manifest.start_date.to_string() + ", " + manifest.end_date.to_string() + "]";
      return result;
    }
  }

  ValidatedGroup validated;
  validated.manifest = manifest;
  const std::int64_t c1_total = c1.total_between(overlap_start, overlap_end);
  const std::int64_t c2_total = c2.total_between(overlap_start, overlap_end);
  if (c2_total > c1_total) {
    std::swap(validated.manifest.competitor1, validated.manifest.competitor2);
    validated.swapped = true;
    validated.warnings.push_back("competitors swapped: " + manifest.competitor2 + " has " +
                                 std::to_string(c2_total) + " commits vs " +
                                 std::to_string(c1_total) + " for " + manifest.competitor1);
  }
  result.group = std::move(validated);
  return result;
}

}  // namespace miao
