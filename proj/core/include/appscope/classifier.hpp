#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "appscope/filter_set.hpp"
#include "appscope/public_suffix.hpp"

namespace appscope {

enum class UrlClass { kAd, kTracker, kOther };

std::string_view to_string(UrlClass c);
/// Inverse of to_string; throws FormatError.
UrlClass url_class_from_string(std::string_view s);

struct UrlClassification {
  std::string url;
  UrlClass url_class = UrlClass::kOther;
  std::optional<std::string> matched_rule;  // raw text, present for Ad and Tracker
  std::string fqdn;
  std::string registrable_domain;
  bool ip_literal = false;

  friend bool operator==(const UrlClassification&, const UrlClassification&) = default;
};

/// Ad if the ad list blocks the URL, else Tracker if the tracker list does,
/// else Other. Throws FormatError naming the URL when it cannot be parsed.
UrlClassification classify_url(std::string_view url, const FilterSet& ad_set,
                               const FilterSet& tracker_set, const PublicSuffixList& suffixes,
                               const MatchContext& context = {});

inline constexpr std::string_view kUncategorized = "uncategorized";

struct DomainCategoryAssignment {
  std::string registrable_domain;
  std::string category;
  std::map<std::string, std::size_t> fqdn_votes;  // label -> FQDN count

  friend bool operator==(const DomainCategoryAssignment&, const DomainCategoryAssignment&) = default;
};

/// Majority vote of FQDN categories for one registrable domain. A missing
/// (nullopt or empty) label votes "uncategorized". Ties go to the label whose
/// FQDNs carry more URLs (`fqdn_url_counts`, default 1 per FQDN), then to the
/// lexicographically smallest label.
///
/// Throws PreconditionError for an empty map, or when `suffixes` is given and
/// an FQDN does not belong to `domain`.
DomainCategoryAssignment majority_category(
    const std::map<std::string, std::optional<std::string>>& fqdn_categories,
    std::string_view domain, const std::map<std::string, std::size_t>& fqdn_url_counts = {},
    const PublicSuffixList* suffixes = nullptr);

}  // namespace appscope
