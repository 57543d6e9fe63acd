#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace appscope {

enum class TraceKind { kPcap, kUrlLog };

/// One application trace to analyze. Exactly one source kind.
struct AppTraceInput {
  std::string app_id;
  TraceKind kind = TraceKind::kUrlLog;
  std::filesystem::path trace;
  std::optional<std::filesystem::path> metadata;
};

/// Parsed corpus manifest, paths resolved against the manifest's directory.
///
///   {"schema_version": 1,
///    "apps": [{"app_id": "...", "pcap" | "urllog": "...", "metadata": "..."}],
///    "baseline": "...", "ad_list": "...", "tracker_list": "...",
///    "suffix_list": "...", "reputation_fixtures": "...",
///    "reputation_cache": "...", "reputation_config": "..."}
struct CorpusManifest {
  std::filesystem::path root;
  std::vector<AppTraceInput> entries;
  std::optional<std::filesystem::path> baseline;
  std::filesystem::path ad_list;
  std::filesystem::path tracker_list;
  std::filesystem::path suffix_list;
  std::optional<std::filesystem::path> reputation_fixtures;
  std::optional<std::filesystem::path> reputation_cache;
  std::optional<std::filesystem::path> reputation_config;
};

/// Throws ConfigError when the manifest is malformed, has no apps, repeats
/// an app_id, gives an app zero or two sources, or names a file that does
/// not exist. The cache file is the one path allowed to be missing.
CorpusManifest load_manifest(const std::filesystem::path& path);
CorpusManifest parse_manifest(std::string_view json_text, const std::filesystem::path& root);

}  // namespace appscope
