#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace miao {

enum class ScoreStage { raw_ms, ams, normalized_ams };

std::string_view to_string(ScoreStage stage);

/// Directed scores among a fixed set of projects: one entry per ordered pair
/// of distinct projects (n^2 - n entries). The stage records how far along
/// the raw-score -> shift-average -> cross-group normalization chain the
/// values are; transitions only move forward.
class ScoreTable {
 public:
  ScoreTable(std::vector<std::string> project_ids, ScoreStage stage);

  int dim() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& project_ids() const { return ids_; }
  ScoreStage stage() const { return stage_; }

  double get(int source, int target) const;
  void set(int source, int target, double score);
  double get(const std::string& source, const std::string& target) const;
  int index_of(const std::string& project_id) const;  // throws when absent

  /// Stage transitions are one-way; requesting a non-forward stage throws.
  void advance_stage(ScoreStage next);

  struct Entry {
    std::string source;
    std::string target;
    double score;
  };
  /// Row order: all pairs with source A_1 first, then A_2, etc.
  std::vector<Entry> entries() const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;  // n*n, diagonal unused
  ScoreStage stage_;
};

}  // namespace miao
