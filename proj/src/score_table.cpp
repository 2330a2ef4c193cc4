#include "miao/score_table.hpp"

#include <stdexcept>

namespace miao {

std::string_view to_string(ScoreStage stage) {
  switch (stage) {
    case ScoreStage::raw_ms:
      return "raw_MS";
    case ScoreStage::ams:
      return "AMS";
    case ScoreStage::normalized_ams:
      return "normalized_AMS";
  }
  return "?";
}

ScoreTable::ScoreTable(std::vector<std::string> project_ids, ScoreStage stage)
    : ids_(std::move(project_ids)), stage_(stage) {
  if (ids_.size() < 2) throw std::invalid_argument("ScoreTable: need at least two projects");
  values_.assign(ids_.size() * ids_.size(), 0.0);
}

double ScoreTable::get(int source, int target) const {
  if (source == target) throw std::invalid_argument("ScoreTable: diagonal entries are omitted");
  return values_[static_cast<std::size_t>(source) * ids_.size() + static_cast<std::size_t>(target)];
}

void ScoreTable::set(int source, int target, double score) {
  if (source == target) throw std::invalid_argument("ScoreTable: diagonal entries are omitted");
  values_[static_cast<std::size_t>(source) * ids_.size() + static_cast<std::size_t>(target)] = score;
}

int ScoreTable::index_of(const std::string& project_id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == project_id) return static_cast<int>(i);
  }
  throw std::out_of_range("ScoreTable: unknown project '" + project_id + "'");
}

double ScoreTable::get(const std::string& source, const std::string& target) const {
  return get(index_of(source), index_of(target));
}

void ScoreTable::advance_stage(ScoreStage next) {
  if (static_cast<int>(next) != static_cast<int>(stage_) + 1) {
    throw std::logic_error("ScoreTable: stage transitions must move forward one step");
  }
  stage_ = next;
}

std::vector<ScoreTable::Entry> ScoreTable::entries() const {
  std::vector<Entry> out;
  out.reserve(ids_.size() * (ids_.size() - 1));
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      if (i == j) continue;
      out.push_back({ids_[static_cast<std::size_t>(i)], ids_[static_cast<std::size_t>(j)], get(i, j)});
    }
  }
  return out;
}

}  // namespace miao
