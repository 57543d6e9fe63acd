#include "appscope/reputation.hpp"

#include "appscope/errors.hpp"

namespace appscope {

std::string_view to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::kOk: return "ok";
    case ReportStatus::kUnknown: return "unknown";
    case ReportStatus::kUnavailable: return "unavailable";
  }
  return "unknown";
}

std::string_view to_string(SafetyVerdict v) {
  switch (v) {
    case SafetyVerdict::kSafe: return "safe";
    case SafetyVerdict::kUnsure: return "unsure";
    case SafetyVerdict::kSuspicious: return "suspicious";
    case SafetyVerdict::kMalicious: return "malicious";
  }
  return "unsure";
}

SafetyVerdict safety_verdict_from_string(std::string_view s) {
  if (s == "safe") return SafetyVerdict::kSafe;
  if (s == "unsure") return SafetyVerdict::kUnsure;
  if (s == "suspicious") return SafetyVerdict::kSuspicious;
  if (s == "malicious") return SafetyVerdict::kMalicious;
  throw FormatError("unknown safety verdict: " + std::string(s));
}

ReportStatus report_status_from_string(std::string_view s) {
  if (s == "ok") return ReportStatus::kOk;
  if (s == "unknown") return ReportStatus::kUnknown;
  if (s == "unavailable") return ReportStatus::kUnavailable;
  throw FormatError("unknown report status: " + std::string(s));
}

UrlReport unknown_url_report(std::string url) {
  UrlReport r;
  r.url = std::move(url);
  r.status = ReportStatus::kUnknown;
  return r;
}

UrlReport unavailable_url_report(std::string url) {
  UrlReport r;
  r.url = std::move(url);
  r.status = ReportStatus::kUnavailable;
  return r;
}

DomainReport unknown_domain_report(std::string domain) {
  DomainReport r;
  r.registrable_domain = std::move(domain);
  r.status = ReportStatus::kUnknown;
  return r;
}

DomainReport unavailable_domain_report(std::string domain) {
  DomainReport r;
  r.registrable_domain = std::move(domain);
  r.status = ReportStatus::kUnavailable;
  return r;
}

double suspicion_fraction(const UrlReport& report) {
  if (report.total_engines <= 0) {
    throw UndefinedScoreError("no engine scanned " + report.url);
  }
  return static_cast<double>(report.positives) / report.total_engines;
}

std::map<SafetyVerdict, double> domain_safety_histogram(std::span<const DomainReport> reports) {
  std::map<SafetyVerdict, std::size_t> counts{{SafetyVerdict::kSafe, 0},
                                              {SafetyVerdict::kUnsure, 0},
                                              {SafetyVerdict::kSuspicious, 0},
                                              {SafetyVerdict::kMalicious, 0}};
  std::size_t total = 0;
  for (const auto& r : reports) {
    if (r.status != ReportStatus::kOk) continue;
    ++counts[r.safety_verdict];
    ++total;
  }
  if (total == 0) throw PreconditionError("domain_safety_histogram: no known domains");
  std::map<SafetyVerdict, double> out;
  for (auto [verdict, n] : counts) out[verdict] = static_cast<double>(n) / static_cast<double>(total);
  return out;
}

}  // namespace appscope
