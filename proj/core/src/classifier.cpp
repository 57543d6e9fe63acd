#include "appscope/classifier.hpp"

#include "appscope/errors.hpp"
#include "appscope/url.hpp"

namespace appscope {

std::string_view to_string(UrlClass c) {
  switch (c) {
    case UrlClass::kAd: return "ad";
    case UrlClass::kTracker: return "tracker";
    case UrlClass::kOther: return "other";
  }
  return "other";
}

UrlClass url_class_from_string(std::string_view s) {
  if (s == "ad") return UrlClass::kAd;
  if (s == "tracker") return UrlClass::kTracker;
  if (s == "other") return UrlClass::kOther;
  throw FormatError("unknown URL class: " + std::string(s));
}

UrlClassification classify_url(std::string_view url, const FilterSet& ad_set,
                               const FilterSet& tracker_set, const PublicSuffixList& suffixes,
                               const MatchContext& context) {
  UrlClassification out;
  out.url = std::string(url);
  try {
    auto fqdn = extract_fqdn(url);
    out.fqdn = std::move(fqdn.name);
    out.ip_literal = fqdn.ip_literal;
  } catch (const Error& e) {
    throw FormatError("cannot classify malformed URL '" + std::string(url) + "': " + e.what());
  }
  out.registrable_domain = suffixes.registrable_domain(out.fqdn);

  MatchContext ctx = context;
  if (!ctx.suffixes) ctx.suffixes = &suffixes;
  if (auto ad = ad_set.match(url, ctx); ad.matched) {
    out.url_class = UrlClass::kAd;
    out.matched_rule = ad.rule->raw;
  } else if (auto tracker = tracker_set.match(url, ctx); tracker.matched) {
    out.url_class = UrlClass::kTracker;
    out.matched_rule = tracker.rule->raw;
  }
  return out;
}

DomainCategoryAssignment majority_category(
    const std::map<std::string, std::optional<std::string>>& fqdn_categories,
    std::string_view domain, const std::map<std::string, std::size_t>& fqdn_url_counts,
    const PublicSuffixList* suffixes) {
  if (fqdn_categories.empty()) {
    throw PreconditionError("majority_category: no FQDNs for " + std::string(domain));
  }
  DomainCategoryAssignment out;
  out.registrable_domain = std::string(domain);
  std::map<std::string, std::size_t> url_weight;
  for (const auto& [fqdn, label] : fqdn_categories) {
    if (suffixes && suffixes->registrable_domain(fqdn) != domain) {
      throw PreconditionError("majority_category: " + fqdn + " is not under " + std::string(domain));
    }
    std::string key = label && !label->empty() ? *label : std::string(kUncategorized);
    ++out.fqdn_votes[key];
    auto count = fqdn_url_counts.find(fqdn);
    url_weight[key] += count == fqdn_url_counts.end() ? 1 : count->second;
  }
  // Final tie-break: smallest label, compared case-insensitively first.
  auto label_less = [](const std::string& a, const std::string& b) {
    auto la = to_lower_ascii(a), lb = to_lower_ascii(b);
    return la != lb ? la < lb : a < b;
  };
  const std::string* best = nullptr;
  for (const auto& [label, votes] : out.fqdn_votes) {
    if (!best) {
      best = &label;
      continue;
    }
    auto best_votes = out.fqdn_votes.at(*best);
    auto weight = url_weight[label], best_weight = url_weight[*best];
    if (votes != best_votes) {
      if (votes > best_votes) best = &label;
    } else if (weight != best_weight) {
      if (weight > best_weight) best = &label;
    } else if (label_less(label, *best)) {
      best = &label;
    }
  }
  out.category = *best;
  return out;
}

}  // namespace appscope
