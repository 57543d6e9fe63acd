#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "appscope/errors.hpp"
#include "appscope/reputation.hpp"

namespace appscope {

/// Backend failure worth retrying (network error, throttling, 5xx).
class TransientError : public Error {
 public:
  using Error::Error;
};

/// A reputation backend. Each fetch_* call is one backend request and
/// returns one report per input key, in input order.
class ReputationProvider {
 public:
  virtual ~ReputationProvider() = default;

  virtual std::vector<UrlReport> fetch_url_reports(std::span<const std::string> urls) = 0;
  virtual std::vector<DomainReport> fetch_domain_reports(std::span<const std::string> domains) = 0;

  /// Remote backends are rate limited; local ones are not.
  [[nodiscard]] virtual bool is_remote() const = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

/// Offline backend over a fixture directory:
///
///   <dir>/index.json           {"schema_version": 1,
///                               "urls": {url: "urls/<sha256>.json"},
///                               "domains": {domain: "domains/<sha256>.json"}}
///   <dir>/urls/<sha256>.json   one wire-format URL report
///   <dir>/domains/<sha256>.json
///
/// Keys missing from the index come back as unknown reports.
class FixtureProvider final : public ReputationProvider {
 public:
  /// Throws IoError / FormatError when the index is missing or corrupt.
  explicit FixtureProvider(std::filesystem::path dir);

  std::vector<UrlReport> fetch_url_reports(std::span<const std::string> urls) override;
  std::vector<DomainReport> fetch_domain_reports(std::span<const std::string> domains) override;
  [[nodiscard]] bool is_remote() const override { return false; }
  [[nodiscard]] std::string name() const override { return "fixture:" + dir_.string(); }

  [[nodiscard]] std::size_t url_entries() const { return url_index_.size(); }
  [[nodiscard]] std::size_t domain_entries() const { return domain_index_.size(); }

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::string> url_index_;
  std::map<std::string, std::string> domain_index_;
};

/// Writes a fixture directory in the layout FixtureProvider reads.
void write_fixture_directory(const std::filesystem::path& dir,
                             std::span<const UrlReport> url_reports,
                             std::span<const DomainReport> domain_reports);

struct HttpProviderConfig {
  std::string url_endpoint;     // e.g. https://host/api/url/report
  std::string domain_endpoint;  // e.g. https://host/api/domain/report
  std::string api_key;
  std::chrono::seconds timeout{30};
};

/// Reads `{"url_endpoint", "domain_endpoint", "api_key"}` from a JSON file;
/// the REPUTATION_API_KEY environment variable overrides the file's key.
/// Throws ConfigError when an endpoint or the key is missing.
HttpProviderConfig load_http_provider_config(const std::filesystem::path& path);

/// Live backend. POSTs `apikey=<key>&resource=<keys joined by \n>` as a form
/// to the endpoint and expects the wire format back.
class HttpProvider final : public ReputationProvider {
 public:
  explicit HttpProvider(HttpProviderConfig config);

  std::vector<UrlReport> fetch_url_reports(std::span<const std::string> urls) override;
  std::vector<DomainReport> fetch_domain_reports(std::span<const std::string> domains) override;
  [[nodiscard]] bool is_remote() const override { return true; }
  [[nodiscard]] std::string name() const override { return "http:" + config_.url_endpoint; }

  [[nodiscard]] std::size_t requests_sent() const { return requests_; }

 private:
  std::string post(const std::string& endpoint, std::span<const std::string> keys);

  HttpProviderConfig config_;
  std::size_t requests_ = 0;
};

}  // namespace appscope
