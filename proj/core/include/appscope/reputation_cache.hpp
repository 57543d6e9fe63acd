#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include "appscope/reputation.hpp"

namespace appscope {

/// Persistent URL/domain report cache backed by one JSON document
/// (`{"schema_version": 1, "url_reports": {...}, "domain_reports": {...}}`).
///
/// Writers are serialized; readers may run concurrently between writes.
/// Unavailable reports are never stored.
class ReputationCache {
 public:
  static constexpr int kSchemaVersion = 1;

  /// In-memory cache; flush() is a no-op.
  ReputationCache() = default;
  /// Loads `path` when it exists, otherwise starts empty. Throws FormatError
  /// for a corrupt file or a schema version we do not understand.
  explicit ReputationCache(std::filesystem::path path);

  ReputationCache(const ReputationCache&) = delete;
  ReputationCache& operator=(const ReputationCache&) = delete;

  [[nodiscard]] std::optional<UrlReport> find_url(const std::string& url) const;
  [[nodiscard]] std::optional<DomainReport> find_domain(const std::string& domain) const;
  void put(const UrlReport& report);
  void put(const DomainReport& report);

  /// Writes the whole cache atomically. Throws IoError.
  void flush() const;

  [[nodiscard]] std::string to_json_text() const;
  void load_json_text(std::string_view text);

  [[nodiscard]] std::size_t url_count() const;
  [[nodiscard]] std::size_t domain_count() const;
  [[nodiscard]] const std::optional<std::filesystem::path>& path() const { return path_; }

  /// Snapshot of every domain report.
  [[nodiscard]] std::map<std::string, DomainReport> domain_reports() const;

 private:
  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, UrlReport> urls_;
  std::map<std::string, DomainReport> domains_;
};

}  // namespace appscope
