#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace appscope {

class PublicSuffixList;

/// One element of a compiled pattern.
struct PatternToken {
  enum class Type { kLiteral, kWildcard, kSeparator };
  Type type = Type::kLiteral;
  std::string text;  // lowercase, literals only

  friend bool operator==(const PatternToken&, const PatternToken&) = default;
};

enum class RuleKind { kHostAnchored, kStartAnchored, kEndAnchored, kPlain };
enum class StartAnchor { kNone, kHost, kStart };
enum class ThirdParty { kIgnore, kRequire, kForbid };

struct RuleOptions {
  std::set<std::string> include_domains;
  std::set<std::string> exclude_domains;
  ThirdParty third_party = ThirdParty::kIgnore;
  /// Options we parse but do not enforce (resource types, match-case...).
  std::set<std::string> unsupported_options;

  friend bool operator==(const RuleOptions&, const RuleOptions&) = default;
};

/// A parsed Adblock request-blocking rule.
struct FilterRule {
  std::string raw;
  StartAnchor start_anchor = StartAnchor::kNone;
  bool end_anchored = false;
  std::vector<PatternToken> pattern;
  bool is_exception = false;
  RuleOptions options;

  /// Dominant anchor: host, then start, then end, else plain.
  [[nodiscard]] RuleKind kind() const;

  friend bool operator==(const FilterRule&, const FilterRule&) = default;
};

enum class SkipReason {
  kEmpty,
  kComment,
  kHeader,
  kCosmetic,
  kRegex,
  kEmptyPattern,
  kUnsupportedType,  // csp, badfilter, page-level exceptions
};

std::string_view to_string(SkipReason reason);

struct Skipped {
  SkipReason reason;
  std::string detail;
};

using ParseResult = std::variant<FilterRule, Skipped>;

/// Parses one filter-list line. Never throws.
ParseResult parse_rule(std::string_view line);

/// Where a request comes from. With no origin, `$domain=` include lists
/// cannot match and `$third-party` constraints are not evaluated.
struct MatchContext {
  std::optional<std::string> origin_domain;
  const PublicSuffixList* suffixes = nullptr;  // for third-party checks; falls back to last two labels
};

/// Lowercased URL plus the hostname span, computed once per lookup.
struct PreparedUrl {
  std::string text;
  std::size_t host_begin = 0;
  std::size_t host_end = 0;

  /// Throws PreconditionError unless the URL is http://.
  static PreparedUrl from(std::string_view url);
  [[nodiscard]] std::string_view host() const {
    return std::string_view(text).substr(host_begin, host_end - host_begin);
  }
};

/// True when `c` belongs to the `^` separator class.
bool is_separator_char(unsigned char c);

/// Pattern match only (anchors, wildcards, separators), options ignored.
bool pattern_matches(const FilterRule& rule, std::string_view lowered_url, std::size_t host_begin,
                     std::size_t host_end);

/// Whether the rule's `$domain` and `$third-party` options allow it here.
bool options_allow(const RuleOptions& options, const PreparedUrl& url, const MatchContext& context);

/// Longest literal token of the pattern; empty if none.
std::string_view longest_literal(const FilterRule& rule);

}  // namespace appscope
