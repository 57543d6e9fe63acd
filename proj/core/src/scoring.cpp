#include "appscope/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "appscope/errors.hpp"
#include "appscope/hash.hpp"
#include "appscope/url.hpp"
#include "json.hpp"

namespace appscope {

std::string_view to_string(RankAxis axis) {
  switch (axis) {
    case RankAxis::kByUrls: return "by_urls";
    case RankAxis::kByDomains: return "by_domains";
    case RankAxis::kByAdUrls: return "by_ad_urls";
    case RankAxis::kByTrackerUrls: return "by_tracker_urls";
    case RankAxis::kBySuspicion: return "by_suspicion";
  }
  return "by_urls";
}

RankAxis rank_axis_from_string(std::string_view s) {
  for (auto axis : kAllAxes) {
    if (to_string(axis) == s) return axis;
  }
  throw ConfigError("unknown ranking axis: " + std::string(s));
}

void ScoringConfig::validate() const {
  if (!(alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
  if (!(beta >= 1.0)) throw ConfigError("beta must be >= 1");
  if (suspicious_threshold < 0) throw ConfigError("suspicious_threshold must be >= 0");
}

ScoringConfig parse_scoring_config(std::string_view json_text) {
  ScoringConfig config;
  try {
    auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_object()) throw ConfigError("scoring config must be a JSON object");
    if (doc.contains("alpha")) config.alpha = doc["alpha"].get<double>();
    if (doc.contains("beta")) config.beta = doc["beta"].get<double>();
    if (doc.contains("whitelist")) config.whitelist = doc["whitelist"].get<std::vector<std::string>>();
    if (doc.contains("suspicious_threshold")) {
      config.suspicious_threshold = doc["suspicious_threshold"].get<int>();
    }
    if (doc.contains("top_n")) config.top_n = doc["top_n"].get<std::size_t>();
    if (doc.contains("axes")) {
      config.axes.clear();
      for (const auto& a : doc["axes"]) config.axes.push_back(rank_axis_from_string(a.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scoring config: ") + e.what());
  }
  config.validate();
  return config;
}

ScoringConfig load_scoring_config(const std::filesystem::path& path) {
  return parse_scoring_config(read_file(path));
}

std::set<std::string> AppProfile::registrable_domains() const {
  std::set<std::string> out;
  for (const auto& [url, c] : classifications) out.insert(c.registrable_domain);
  return out;
}

AppCounts compute_counts(const AppProfile& profile) {
  AppCounts counts;
  counts.distinct_urls = profile.urls.size();
  counts.distinct_domains = profile.registrable_domains().size();
  for (const auto& [url, c] : profile.classifications) {
    if (c.url_class == UrlClass::kAd) ++counts.ad_urls;
    if (c.url_class == UrlClass::kTracker) ++counts.tracker_urls;
  }
  return counts;
}

std::set<std::string> resolve_whitelist(const ScoringConfig& config, const PublicSuffixList& suffixes) {
  std::set<std::string> out;
  for (const auto& entry : config.whitelist) out.insert(suffixes.registrable_domain(entry));
  return out;
}

double app_suspicion_score(const AppProfile& profile, const ScoringConfig& config,
                           const PublicSuffixList& suffixes) {
  config.validate();
  auto whitelist = resolve_whitelist(config, suffixes);
  double sum = 0.0;
  std::set<std::string> flagged_domains;
  for (const auto& url : profile.urls) {
    auto report = profile.reports.find(url);
    int positives = report != profile.reports.end() && report->second.status == ReportStatus::kOk
                        ? report->second.positives
                        : 0;
    if (positives <= 0) continue;
    auto cls = profile.classifications.find(url);
    std::string domain = cls != profile.classifications.end()
                             ? cls->second.registrable_domain
                             : suffixes.registrable_domain(extract_fqdn(url).name);
    if (whitelist.contains(domain)) continue;
    sum += std::pow(static_cast<double>(positives), config.alpha);
    if (positives > config.suspicious_threshold) flagged_domains.insert(domain);
  }
  if (flagged_domains.empty()) return 0.0;
  return sum * std::pow(static_cast<double>(flagged_domains.size()), config.beta);
}

double axis_value(const AppProfile& profile, RankAxis axis) {
  switch (axis) {
    case RankAxis::kByUrls: return static_cast<double>(profile.counts.distinct_urls);
    case RankAxis::kByDomains: return static_cast<double>(profile.counts.distinct_domains);
    case RankAxis::kByAdUrls: return static_cast<double>(profile.counts.ad_urls);
    case RankAxis::kByTrackerUrls: return static_cast<double>(profile.counts.tracker_urls);
    case RankAxis::kBySuspicion: return profile.suspicion_score;
  }
  return 0.0;
}

std::vector<RankedApp> rank_apps(std::span<const AppProfile> profiles, RankAxis axis, std::size_t n) {
  std::vector<RankedApp> ranked;
  ranked.reserve(profiles.size());
  for (const auto& p : profiles) ranked.push_back({p.app_id, p.display_name(), axis_value(p, axis)});
  std::sort(ranked.begin(), ranked.end(), [](const RankedApp& a, const RankedApp& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.name != b.name) return a.name < b.name;
    return a.app_id < b.app_id;
  });
  if (ranked.size() > n) ranked.resize(n);
  return ranked;
}

CategoryMatrix category_matrix(std::span<const AppProfile> profiles,
                               const std::map<std::string, std::string>& domain_categories) {
  std::map<std::string, std::set<std::string>> domains_by_app_category;
  for (const auto& p : profiles) {
    auto& domains = domains_by_app_category[p.metadata.category];
    for (auto& d : p.registrable_domains()) domains.insert(std::move(d));
  }
  CategoryMatrix matrix;
  for (const auto& [app_category, domains] : domains_by_app_category) {
    if (domains.empty()) {
      matrix[app_category] = std::nullopt;
      continue;
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& d : domains) {
      auto it = domain_categories.find(d);
      ++counts[it == domain_categories.end() ? std::string(kUncategorized) : it->second];
    }
    std::map<std::string, double> row;
    for (const auto& [label, n] : counts) {
      row[label] = 100.0 * static_cast<double>(n) / static_cast<double>(domains.size());
    }
    matrix[app_category] = std::move(row);
  }
  return matrix;
}

}  // namespace appscope
