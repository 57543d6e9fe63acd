#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "appscope/corpus.hpp"
#include "appscope/filter_set.hpp"
#include "appscope/public_suffix.hpp"
#include "appscope/report.hpp"
#include "appscope/reputation_client.hpp"
#include "appscope/reputation_provider.hpp"
#include "appscope/trace_ingest.hpp"

namespace appscope {

std::string_view tool_version();

/// Filter lists and suffix list named by a manifest.
struct ListSet {
  FilterSet ads;
  FilterSet trackers;
  PublicSuffixList suffixes;
};

ListSet load_lists(const CorpusManifest& manifest);

struct AnalyzeOptions {
  bool offline = false;
  std::size_t jobs = 1;
  PcapOptions pcap;
  std::optional<std::string> origin_domain;
  std::optional<std::filesystem::path> baseline;  // overrides the manifest's
  ClientOptions client;
  ClientTiming timing;
};

struct AnalyzeResult {
  ReportBundle bundle;
  std::size_t failed_apps = 0;
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;
};

/// Offline runs use the fixture directory and never the live backend.
/// Online runs use the live backend when the manifest names a config file,
/// else the fixtures. Throws ConfigError when neither is available.
std::unique_ptr<ReputationProvider> make_provider(const CorpusManifest& manifest, bool offline);

/// Full URLs seen in the baseline trace, empty when there is none.
std::unordered_set<std::string> load_baseline(const CorpusManifest& manifest,
                                              const AnalyzeOptions& options);

/// Ingest, baseline filter and classification for one app. Never throws; a
/// failure comes back as an AppProfile with status kFailed.
AppProfile analyze_app(const AppTraceInput& input, const ListSet& lists,
                       const std::unordered_set<std::string>& baseline, const AnalyzeOptions& options);

/// ingest -> baseline filter -> classify -> reputation -> score -> aggregate.
AnalyzeResult run_analyze(const CorpusManifest& manifest, const ScoringConfig& config,
                          const AnalyzeOptions& options);
AnalyzeResult run_analyze(const CorpusManifest& manifest, const ScoringConfig& config,
                          const AnalyzeOptions& options, ReputationProvider& provider);

}  // namespace appscope
