#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "appscope/filter_rule.hpp"

namespace appscope {

struct FilterSetStats {
  std::size_t lines = 0;
  std::size_t blocking = 0;
  std::size_t exceptions = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> skipped_by_reason;
  std::map<std::string, std::size_t> unsupported_options;  // option -> rules carrying it

  /// Lines that are neither comments, headers, blanks nor element hiding.
  [[nodiscard]] std::size_t request_rule_lines() const;
};

/// Outcome of matching one URL. Pointers refer into the FilterSet.
struct MatchResult {
  bool matched = false;
  const FilterRule* rule = nullptr;       // first blocking rule that matched
  const FilterRule* exception = nullptr;  // set when an exception suppressed `rule`
};

/// Candidate lookup keyed by the first 8 literal bytes of each pattern.
/// Rules without an 8-byte literal run live in an always-checked bucket.
class RuleIndex {
 public:
  static constexpr std::size_t kKeySize = 8;

  void add(std::uint32_t id, const FilterRule& rule);
  /// Sorted, de-duplicated ids of every rule that could match `lowered_url`.
  void candidates(std::string_view lowered_url, std::vector<std::uint32_t>& out) const;

  [[nodiscard]] std::size_t keyed_rules() const { return keyed_; }
  [[nodiscard]] std::size_t unkeyed_rules() const { return always_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, std::vector<std::uint32_t>, Hash, std::equal_to<>> buckets_;
  std::vector<std::uint32_t> always_;
  std::size_t keyed_ = 0;
};

/// Compiled, immutable rule collection. Safe for concurrent readers.
class FilterSet {
 public:
  FilterSet() = default;

  static FilterSet compile(std::span<const std::string> lines);
  static FilterSet compile_text(std::string_view text);
  /// Throws IoError.
  static FilterSet load(const std::filesystem::path& path);

  /// Blocks iff some blocking rule matches and no exception rule does.
  /// Throws PreconditionError for a non-http URL.
  [[nodiscard]] MatchResult match(std::string_view url, const MatchContext& context = {}) const;
  /// Same verdict without the index; used to check the index.
  [[nodiscard]] MatchResult match_linear(std::string_view url, const MatchContext& context = {}) const;

  [[nodiscard]] const std::vector<FilterRule>& blocking_rules() const { return blocking_; }
  [[nodiscard]] const std::vector<FilterRule>& exception_rules() const { return exceptions_; }
  [[nodiscard]] const FilterSetStats& stats() const { return stats_; }
  [[nodiscard]] const RuleIndex& blocking_index() const { return blocking_index_; }
  /// SHA-256 of the source text (lines joined by '\n').
  [[nodiscard]] const std::string& content_hash() const { return hash_; }

 private:
  void add_line(std::string_view line);
  void finish();

  std::vector<FilterRule> blocking_;
  std::vector<FilterRule> exceptions_;
  std::vector<std::string> blocking_literals_;
  std::vector<std::string> exception_literals_;
  RuleIndex blocking_index_;
  RuleIndex exception_index_;
  FilterSetStats stats_;
  std::string hash_;
};

}  // namespace appscope
