#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

namespace appscope {

/// Whether the provider actually knew the key.
enum class ReportStatus {
  kOk,
  kUnknown,      // never scanned by the provider; not the same as clean
  kUnavailable,  // backend unreachable after retries; never cached
};

enum class SafetyVerdict { kSafe, kUnsure, kSuspicious, kMalicious };

std::string_view to_string(ReportStatus s);
std::string_view to_string(SafetyVerdict v);
/// Throws FormatError for anything but safe/unsure/suspicious/malicious.
SafetyVerdict safety_verdict_from_string(std::string_view s);
ReportStatus report_status_from_string(std::string_view s);

/// Multi-engine scan result for one URL.
struct UrlReport {
  std::string url;
  std::map<std::string, bool> engine_verdicts;  // engine -> flagged
  int positives = 0;
  int total_engines = 0;
  double retrieved_at = 0.0;
  ReportStatus status = ReportStatus::kOk;

  friend bool operator==(const UrlReport&, const UrlReport&) = default;
};

/// Category and safety information for one registrable domain.
struct DomainReport {
  std::string registrable_domain;
  std::map<std::string, std::string> categories;  // fqdn -> label
  SafetyVerdict safety_verdict = SafetyVerdict::kUnsure;
  double retrieved_at = 0.0;
  ReportStatus status = ReportStatus::kOk;

  friend bool operator==(const DomainReport&, const DomainReport&) = default;
};

UrlReport unknown_url_report(std::string url);
UrlReport unavailable_url_report(std::string url);
DomainReport unknown_domain_report(std::string domain);
DomainReport unavailable_domain_report(std::string domain);

/// positives / total_engines. Throws UndefinedScoreError when the provider
/// scanned nothing (total_engines == 0): callers treat that as unknown.
double suspicion_fraction(const UrlReport& report);

/// Fraction of domains per verdict, over reports with status kOk. All four
/// verdicts are present in the result. Throws PreconditionError when no
/// report qualifies.
std::map<SafetyVerdict, double> domain_safety_histogram(std::span<const DomainReport> reports);

}  // namespace appscope
