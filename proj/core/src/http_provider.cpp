#include <chrono>
#include <cstdlib>

#include "appscope/hash.hpp"
#include "appscope/reputation_provider.hpp"
#include "appscope/wire_format.hpp"
#include "httplib.h"
#include "json.hpp"

namespace appscope {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint is not an absolute URL: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string batch_label(std::span<const std::string> keys) {
  std::string label = "[" + std::to_string(keys.size()) + " keys";
  if (!keys.empty()) label += ", first " + keys.front();
  return label + "]";
}

double now_epoch() {
  using namespace std::chrono;
  return duration<double>(system_clock::now().time_since_epoch()).count();
}

template <typename Report, typename KeyFn>
std::vector<Report> in_request_order(std::vector<Report> reports, std::span<const std::string> keys,
                                     KeyFn key_of) {
  std::map<std::string, Report> by_key;
  for (auto& r : reports) by_key[key_of(r)] = std::move(r);
  std::vector<Report> out;
  out.reserve(keys.size());
  for (const auto& key : keys) {
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw ProtocolError("reputation batch " + batch_label(keys) + " has no result for " + key);
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

HttpProviderConfig load_http_provider_config(const std::filesystem::path& path) {
  HttpProviderConfig config;
  try {
    auto doc = nlohmann::json::parse(read_file(path));
    config.url_endpoint = doc.value("url_endpoint", "");
    config.domain_endpoint = doc.value("domain_endpoint", "");
    config.api_key = doc.value("api_key", "");
    if (doc.contains("timeout_seconds")) config.timeout = std::chrono::seconds(doc["timeout_seconds"].get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("reputation config " + path.string() + ": " + e.what());
  }
  if (const char* key = std::getenv("REPUTATION_API_KEY"); key && *key) config.api_key = key;
  if (config.url_endpoint.empty() || config.domain_endpoint.empty()) {
    throw ConfigError("reputation config needs url_endpoint and domain_endpoint");
  }
  if (config.api_key.empty()) {
    throw ConfigError("no reputation API key (config api_key or REPUTATION_API_KEY)");
  }
  return config;
}

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  split_endpoint(config_.url_endpoint);
  split_endpoint(config_.domain_endpoint);
}

std::string HttpProvider::post(const std::string& endpoint, std::span<const std::string> keys) {
  auto [origin, path] = split_endpoint(endpoint);
  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);

  std::string joined;
  for (const auto& k : keys) {
    if (!joined.empty()) joined.push_back('\n');
    joined += k;
  }
  httplib::Params params{{"apikey", config_.api_key}, {"resource", joined}};
  ++requests_;
  auto res = client.Post(path, params);
  if (!res) {
    throw TransientError("reputation request " + batch_label(keys) + " failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status == 204 || res->status == 429 || res->status >= 500) {
    throw TransientError("reputation backend busy (HTTP " + std::to_string(res->status) + ") for " +
                         batch_label(keys));
  }
  if (res->status != 200) {
    throw ProtocolError("reputation backend answered HTTP " + std::to_string(res->status) +
                        " for batch " + batch_label(keys));
  }
  return res->body;
}

std::vector<UrlReport> HttpProvider::fetch_url_reports(std::span<const std::string> urls) {
  if (urls.empty()) return {};
  auto body = post(config_.url_endpoint, urls);
  std::vector<UrlReport> reports;
  try {
    reports = parse_url_reports(body, now_epoch());
  } catch (const ProtocolError& e) {
    throw ProtocolError("batch " + batch_label(urls) + ": " + e.what());
  }
  return in_request_order(std::move(reports), urls, [](const UrlReport& r) { return r.url; });
}

std::vector<DomainReport> HttpProvider::fetch_domain_reports(std::span<const std::string> domains) {
  if (domains.empty()) return {};
  auto body = post(config_.domain_endpoint, domains);
  std::vector<DomainReport> reports;
  try {
    reports = parse_domain_reports(body, now_epoch());
  } catch (const ProtocolError& e) {
    throw ProtocolError("batch " + batch_label(domains) + ": " + e.what());
  }
  return in_request_order(std::move(reports), domains,
                          [](const DomainReport& r) { return r.registrable_domain; });
}

}  // namespace appscope
