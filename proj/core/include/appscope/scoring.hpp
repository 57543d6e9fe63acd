#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "appscope/app_metadata.hpp"
#include "appscope/classifier.hpp"
#include "appscope/reputation.hpp"

namespace appscope {

enum class RankAxis { kByUrls, kByDomains, kByAdUrls, kByTrackerUrls, kBySuspicion };

std::string_view to_string(RankAxis axis);
/// Throws ConfigError.
RankAxis rank_axis_from_string(std::string_view s);
inline constexpr std::array<RankAxis, 5> kAllAxes = {RankAxis::kByUrls, RankAxis::kByDomains,
                                                     RankAxis::kByAdUrls, RankAxis::kByTrackerUrls,
                                                     RankAxis::kBySuspicion};

/// Parameters of the per-app suspicion score.
struct ScoringConfig {
  double alpha = 3.0;
  double beta = 1.0;
  /// Whitelisted domains as written; matched by registrable domain.
  std::vector<std::string> whitelist = {"xiti.com", "api.airpush.com", "scorecardresearch.com",
                                        "bluekai.com", "ad.leadboltapps.net"};
  /// A URL counts toward the distinct-domain factor when positives exceed this.
  int suspicious_threshold = 0;
  std::vector<RankAxis> axes{kAllAxes.begin(), kAllAxes.end()};
  std::size_t top_n = 10;

  /// Throws ConfigError when alpha < 1 or beta < 1.
  void validate() const;
};

/// Reads `{alpha, beta, whitelist[], axes[], suspicious_threshold, top_n}`,
/// every key optional. Throws ConfigError.
ScoringConfig parse_scoring_config(std::string_view json_text);
ScoringConfig load_scoring_config(const std::filesystem::path& path);

struct AppCounts {
  std::size_t distinct_urls = 0;
  std::size_t distinct_domains = 0;
  std::size_t ad_urls = 0;
  std::size_t tracker_urls = 0;

  friend bool operator==(const AppCounts&, const AppCounts&) = default;
};

enum class AppStatus { kOk, kFailed };

/// Everything known about one application's trace.
struct AppProfile {
  std::string app_id;
  AppMetadata metadata;
  AppStatus status = AppStatus::kOk;
  std::string failure;  // set when status == kFailed
  std::size_t requests_before_baseline = 0;
  std::size_t requests_after_baseline = 0;
  std::set<std::string> urls;                            // distinct full URLs
  std::map<std::string, std::size_t> url_requests;       // url -> request count
  std::map<std::string, UrlClassification> classifications;
  std::map<std::string, UrlReport> reports;
  AppCounts counts;
  double suspicion_score = 0.0;

  [[nodiscard]] std::set<std::string> registrable_domains() const;
  [[nodiscard]] std::string display_name() const { return metadata.name.empty() ? app_id : metadata.name; }

  friend bool operator==(const AppProfile&, const AppProfile&) = default;
};

/// Counts derived from the classifications.
AppCounts compute_counts(const AppProfile& profile);

/// sum_i p_i^alpha * d^beta over the app's URLs, after dropping URLs whose
/// registrable domain is whitelisted. p_i is the positive-engine count (0 for
/// URLs without a known report); d is the number of distinct registrable
/// domains among URLs with p_i above the threshold. No such URL means 0.
double app_suspicion_score(const AppProfile& profile, const ScoringConfig& config,
                           const PublicSuffixList& suffixes);

/// Registrable forms of the configured whitelist entries.
std::set<std::string> resolve_whitelist(const ScoringConfig& config, const PublicSuffixList& suffixes);

struct RankedApp {
  std::string app_id;
  std::string name;
  double value = 0.0;

  friend bool operator==(const RankedApp&, const RankedApp&) = default;
};

/// Top `n` apps on `axis`, descending; ties by display name, then app id.
std::vector<RankedApp> rank_apps(std::span<const AppProfile> profiles, RankAxis axis, std::size_t n);

double axis_value(const AppProfile& profile, RankAxis axis);

/// Row label -> (column label -> percentage). A row is nullopt when its app
/// category contacted no domains.
using CategoryMatrix = std::map<std::string, std::optional<std::map<std::string, double>>>;

/// cell(r, c) = 100 * |domains of category c contacted by apps of category r|
///                  / |domains contacted by apps of category r|.
/// Domains missing from `domain_categories` count as "uncategorized".
CategoryMatrix category_matrix(std::span<const AppProfile> profiles,
                               const std::map<std::string, std::string>& domain_categories);

}  // namespace appscope
