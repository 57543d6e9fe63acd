#include "appscope/reputation_cache.hpp"

#include <mutex>

#include "appscope/errors.hpp"
#include "appscope/hash.hpp"
#include "json_codec.hpp"

namespace appscope {

using detail::json;

ReputationCache::ReputationCache(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(*path_)) load_json_text(read_file(*path_));
}

std::optional<UrlReport> ReputationCache::find_url(const std::string& url) const {
  std::shared_lock lock(mutex_);
  auto it = urls_.find(url);
  if (it == urls_.end()) return std::nullopt;
  return it->second;
}

std::optional<DomainReport> ReputationCache::find_domain(const std::string& domain) const {
  std::shared_lock lock(mutex_);
  auto it = domains_.find(domain);
  if (it == domains_.end()) return std::nullopt;
  return it->second;
}

void ReputationCache::put(const UrlReport& report) {
  if (report.status == ReportStatus::kUnavailable) return;
  std::unique_lock lock(mutex_);
  urls_[report.url] = report;
}

void ReputationCache::put(const DomainReport& report) {
  if (report.status == ReportStatus::kUnavailable) return;
  std::unique_lock lock(mutex_);
  domains_[report.registrable_domain] = report;
}

std::string ReputationCache::to_json_text() const {
  std::shared_lock lock(mutex_);
  json urls = json::object();
  for (const auto& [url, r] : urls_) urls[url] = detail::to_json(r);
  json domains = json::object();
  for (const auto& [d, r] : domains_) domains[d] = detail::to_json(r);
  json doc{{"schema_version", kSchemaVersion}, {"url_reports", urls}, {"domain_reports", domains}};
  return doc.dump(2) + "\n";
}

void ReputationCache::load_json_text(std::string_view text) {
  std::map<std::string, UrlReport> urls;
  std::map<std::string, DomainReport> domains;
  try {
    auto doc = json::parse(text);
    auto version = doc.find("schema_version");
    if (version == doc.end()) throw FormatError("reputation cache: missing schema_version");
    if (version->get<int>() != kSchemaVersion) {
      throw FormatError("reputation cache: unsupported schema_version " + version->dump());
    }
    for (const auto& [key, value] : doc.at("url_reports").items()) {
      urls[key] = detail::url_report_from_json(value);
    }
    for (const auto& [key, value] : doc.at("domain_reports").items()) {
      domains[key] = detail::domain_report_from_json(value);
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("reputation cache: ") + e.what());
  }
  std::unique_lock lock(mutex_);
  urls_ = std::move(urls);
  domains_ = std::move(domains);
}

void ReputationCache::flush() const {
  if (!path_) return;
  write_file_atomic(*path_, to_json_text());
}

std::size_t ReputationCache::url_count() const {
  std::shared_lock lock(mutex_);
  return urls_.size();
}

std::size_t ReputationCache::domain_count() const {
  std::shared_lock lock(mutex_);
  return domains_.size();
}

std::map<std::string, DomainReport> ReputationCache::domain_reports() const {
  std::shared_lock lock(mutex_);
  return domains_;
}

}  // namespace appscope
