#include <filesystem>

#include "appscope/hash.hpp"
#include "appscope/reputation_provider.hpp"
#include "appscope/wire_format.hpp"
#include "json.hpp"

namespace appscope {

namespace {

using nlohmann::json;

std::map<std::string, std::string> read_section(const json& index, const char* key) {
  std::map<std::string, std::string> out;
  if (auto it = index.find(key); it != index.end()) {
    for (const auto& [k, v] : it->items()) out[k] = v.get<std::string>();
  }
  return out;
}

}  // namespace

FixtureProvider::FixtureProvider(std::filesystem::path dir) : dir_(std::move(dir)) {
  auto text = read_file(dir_ / "index.json");
  try {
    auto index = json::parse(text);
    if (index.value("schema_version", 0) != 1) {
      throw FormatError("fixture index: unsupported schema_version in " + dir_.string());
    }
    url_index_ = read_section(index, "urls");
    domain_index_ = read_section(index, "domains");
  } catch (const json::exception& e) {
    throw FormatError("fixture index " + (dir_ / "index.json").string() + ": " + e.what());
  }
}

std::vector<UrlReport> FixtureProvider::fetch_url_reports(std::span<const std::string> urls) {
  std::vector<UrlReport> out;
  out.reserve(urls.size());
  for (const auto& url : urls) {
    auto it = url_index_.find(url);
    if (it == url_index_.end()) {
      out.push_back(unknown_url_report(url));
      continue;
    }
    auto reports = parse_url_reports(read_file(dir_ / it->second), 0.0);
    if (reports.size() != 1 || reports.front().url != url) {
      throw ProtocolError("fixture " + it->second + " does not describe " + url);
    }
    out.push_back(std::move(reports.front()));
  }
  return out;
}

std::vector<DomainReport> FixtureProvider::fetch_domain_reports(std::span<const std::string> domains) {
  std::vector<DomainReport> out;
  out.reserve(domains.size());
  for (const auto& domain : domains) {
    auto it = domain_index_.find(domain);
    if (it == domain_index_.end()) {
      out.push_back(unknown_domain_report(domain));
      continue;
    }
    auto reports = parse_domain_reports(read_file(dir_ / it->second), 0.0);
    if (reports.size() != 1 || reports.front().registrable_domain != domain) {
      throw ProtocolError("fixture " + it->second + " does not describe " + domain);
    }
    out.push_back(std::move(reports.front()));
  }
  return out;
}

void write_fixture_directory(const std::filesystem::path& dir,
                             std::span<const UrlReport> url_reports,
                             std::span<const DomainReport> domain_reports) {
  std::filesystem::create_directories(dir / "urls");
  std::filesystem::create_directories(dir / "domains");
  json urls = json::object();
  for (const auto& r : url_reports) {
    std::string rel = "urls/" + sha256_hex(r.url) + ".json";
    write_file_atomic(dir / rel, to_wire(r));
    urls[r.url] = rel;
  }
  json domains = json::object();
  for (const auto& r : domain_reports) {
    std::string rel = "domains/" + sha256_hex(r.registrable_domain) + ".json";
    write_file_atomic(dir / rel, to_wire(r));
    domains[r.registrable_domain] = rel;
  }
  json index{{"schema_version", 1}, {"urls", urls}, {"domains", domains}};
  write_file_atomic(dir / "index.json", index.dump(2) + "\n");
}

}  // namespace appscope
