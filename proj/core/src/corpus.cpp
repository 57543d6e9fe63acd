#include "appscope/corpus.hpp"

#include <set>

#include "appscope/errors.hpp"
#include "appscope/hash.hpp"
#include "json.hpp"

namespace appscope {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& root, const std::string& rel) {
  std::filesystem::path p(rel);
  return p.is_absolute() ? p : (root / p).lexically_normal();
}

std::filesystem::path require_existing(const std::filesystem::path& root, const json& doc,
                                       const char* key) {
  if (!doc.contains(key) || !doc[key].is_string()) {
    throw ConfigError(std::string("manifest: missing \"") + key + "\"");
  }
  auto p = resolve(root, doc[key].get<std::string>());
  if (!std::filesystem::exists(p)) throw ConfigError("manifest: file not found: " + p.string());
  return p;
}

std::optional<std::filesystem::path> optional_path(const std::filesystem::path& root, const json& doc,
                                                   const char* key, bool must_exist) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  auto p = resolve(root, doc[key].get<std::string>());
  if (must_exist && !std::filesystem::exists(p)) {
    throw ConfigError("manifest: file not found: " + p.string());
  }
  return p;
}

}  // namespace

CorpusManifest parse_manifest(std::string_view json_text, const std::filesystem::path& root) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("manifest must be a JSON object");
  if (doc.value("schema_version", 1) != 1) throw ConfigError("manifest: unsupported schema_version");

  CorpusManifest m;
  m.root = root;
  try {
    if (!doc.contains("apps") || !doc["apps"].is_array() || doc["apps"].empty()) {
      throw ConfigError("manifest lists no apps");
    }
    std::set<std::string> ids;
    for (const auto& app : doc["apps"]) {
      AppTraceInput entry;
      entry.app_id = app.at("app_id").get<std::string>();
      if (entry.app_id.empty()) throw ConfigError("manifest: empty app_id");
      if (!ids.insert(entry.app_id).second) throw ConfigError("manifest: duplicate app_id " + entry.app_id);
      bool has_pcap = app.contains("pcap"), has_log = app.contains("urllog");
      if (has_pcap == has_log) {
        throw ConfigError("manifest: app " + entry.app_id + " needs exactly one of pcap/urllog");
      }
      entry.kind = has_pcap ? TraceKind::kPcap : TraceKind::kUrlLog;
      entry.trace = require_existing(root, app, has_pcap ? "pcap" : "urllog");
      entry.metadata = optional_path(root, app, "metadata", true);
      m.entries.push_back(std::move(entry));
    }
    m.baseline = optional_path(root, doc, "baseline", true);
    m.ad_list = require_existing(root, doc, "ad_list");
    m.tracker_list = require_existing(root, doc, "tracker_list");
    m.suffix_list = require_existing(root, doc, "suffix_list");
    m.reputation_fixtures = optional_path(root, doc, "reputation_fixtures", true);
    m.reputation_cache = optional_path(root, doc, "reputation_cache", false);
    m.reputation_config = optional_path(root, doc, "reputation_config", true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  return m;
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  auto root = path.parent_path();
  if (root.empty()) root = ".";
  return parse_manifest(text, root);
}

}  // namespace appscope
