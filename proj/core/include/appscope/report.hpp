#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "appscope/reputation.hpp"
#include "appscope/scoring.hpp"
#include "appscope/stats.hpp"

namespace appscope {

/// Domain-level rollup shared by every app that contacted the domain.
struct DomainInfo {
  std::string domain;
  std::string category{kUncategorized};
  std::map<std::string, std::size_t> fqdn_votes;
  std::set<std::string> fqdns;
  ReportStatus status = ReportStatus::kUnknown;
  std::optional<SafetyVerdict> safety_verdict;  // set when status is kOk

  friend bool operator==(const DomainInfo&, const DomainInfo&) = default;
};

struct DomainPopularityRow {
  std::string domain;
  std::size_t apps = 0;
  double fraction = 0;  // of apps contacting the domain

  friend bool operator==(const DomainPopularityRow&, const DomainPopularityRow&) = default;
};

/// Ad or tracker URLs per domain and their share of all such URLs.
struct ClassDomainRow {
  std::string domain;
  std::size_t urls = 0;
  double percent = 0;

  friend bool operator==(const ClassDomainRow&, const ClassDomainRow&) = default;
};

struct CategoryPopularityRow {
  std::string category;
  std::size_t domains = 0;
  double percent = 0;

  friend bool operator==(const CategoryPopularityRow&, const CategoryPopularityRow&) = default;
};

struct MaliciousFractionRow {
  std::string category;
  std::size_t malicious = 0;
  std::size_t rated = 0;  // domains with a known verdict
  double percent = 0;

  friend bool operator==(const MaliciousFractionRow&, const MaliciousFractionRow&) = default;
};

struct CorpusCounts {
  std::size_t apps = 0;
  std::size_t active_apps = 0;  // at least one request after baseline filtering
  std::size_t failed_apps = 0;
  std::size_t requests_before_baseline = 0;
  std::size_t requests_after_baseline = 0;
  std::size_t app_url_pairs = 0;     // sum over apps of distinct URLs
  std::size_t distinct_urls = 0;     // across the corpus
  std::size_t distinct_domains = 0;  // registrable domains across the corpus
  std::size_t urls_with_reports = 0;
  std::size_t urls_unknown = 0;
  std::size_t urls_unavailable = 0;

  friend bool operator==(const CorpusCounts&, const CorpusCounts&) = default;
};

struct Provenance {
  std::string tool_version;
  std::string ad_list_sha256;
  std::string tracker_list_sha256;
  std::string suffix_list_sha256;
  std::string reputation_provider;
  double alpha = 3.0;
  double beta = 1.0;
  int suspicious_threshold = 0;
  std::size_t top_n = 10;
  std::vector<std::string> axes;
  std::map<std::string, std::string> whitelist;  // as configured -> registrable
  std::map<std::string, std::string> notes;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Everything the report layer emits. Each table is derived from `apps` and
/// `domains` by aggregate().
struct ReportBundle {
  std::vector<AppProfile> apps;
  std::map<std::string, DomainInfo> domains;

  std::map<std::string, std::vector<RankedApp>> top;  // axis name -> ranking
  std::vector<DomainPopularityRow> domain_popularity;
  std::vector<ClassDomainRow> ad_domains;
  std::vector<ClassDomainRow> tracker_domains;
  std::vector<CategoryPopularityRow> domain_categories;
  std::map<std::string, double> safety_histogram;  // verdict -> fraction; empty if nothing rated
  std::vector<MaliciousFractionRow> malicious_by_category;
  CategoryMatrix category_matrix;
  std::map<std::string, std::vector<std::pair<double, double>>> cdfs;  // metric -> points
  std::map<std::string, DistributionSummary> urls_by_app_category;
  std::map<int, double> url_positives_histogram;  // positives -> fraction of scanned URLs
  CorpusCounts counts;
  Provenance provenance;

  friend bool operator==(const ReportBundle&, const ReportBundle&) = default;
};

/// Builds every table from per-app profiles and domain rollups. Tables are
/// complete (no top-N cut) except the rankings, which keep `top_n` rows.
ReportBundle aggregate(std::vector<AppProfile> apps, std::map<std::string, DomainInfo> domains,
                       Provenance provenance);

/// Canonical JSON text of the whole bundle (sorted keys, 2-space indent, LF).
std::string bundle_to_json(const ReportBundle& bundle);
/// Throws FormatError.
ReportBundle bundle_from_json(std::string_view text);

enum class ReportFormat { kJson, kCsv, kText };
/// Throws ConfigError.
ReportFormat report_format_from_string(std::string_view s);

/// Writes the bundle under `out_dir` and returns the files written.
///   json: bundle.json plus tables/<table>.json
///   csv:  <table>.csv, header row first, RFC 4180 quoting
///   text: report.txt with aligned tables
/// Fractions print with 3 decimals and percentages with 1 in csv/text.
/// Throws IoError when the directory cannot be written.
std::vector<std::filesystem::path> emit_report(const ReportBundle& bundle, ReportFormat format,
                                               const std::filesystem::path& out_dir);

/// The text rendering alone.
std::string render_text(const ReportBundle& bundle);

/// CSV tables by file stem.
std::map<std::string, std::string> render_csv_tables(const ReportBundle& bundle);

}  // namespace appscope
