#include "appscope/pipeline.hpp"

#include <atomic>
#include <thread>

#include "appscope/errors.hpp"
#include "appscope/reputation_cache.hpp"

namespace appscope {

std::string_view tool_version() { return APPSCOPE_VERSION; }

ListSet load_lists(const CorpusManifest& manifest) {
  return ListSet{FilterSet::load(manifest.ad_list), FilterSet::load(manifest.tracker_list),
                 PublicSuffixList::load(manifest.suffix_list)};
}

std::unique_ptr<ReputationProvider> make_provider(const CorpusManifest& manifest, bool offline) {
  if (!offline && manifest.reputation_config) {
    return std::make_unique<HttpProvider>(load_http_provider_config(*manifest.reputation_config));
  }
  if (manifest.reputation_fixtures) return std::make_unique<FixtureProvider>(*manifest.reputation_fixtures);
  throw ConfigError(offline ? "offline run needs reputation_fixtures in the manifest"
                            : "manifest names neither reputation_config nor reputation_fixtures");
}

std::unordered_set<std::string> load_baseline(const CorpusManifest& manifest,
                                              const AnalyzeOptions& options) {
  std::unordered_set<std::string> urls;
  auto path = options.baseline ? options.baseline : manifest.baseline;
  if (!path) return urls;
  for (const auto& r : read_trace(*path, options.pcap)) urls.insert(r.full_url);
  return urls;
}

AppProfile analyze_app(const AppTraceInput& input, const ListSet& lists,
                       const std::unordered_set<std::string>& baseline, const AnalyzeOptions& options) {
  AppProfile p;
  p.app_id = input.app_id;
  try {
    if (input.metadata) p.metadata = load_metadata(*input.metadata);
    auto requests = input.kind == TraceKind::kPcap ? parse_pcap(input.trace, options.pcap)
                                                   : parse_urllog(input.trace);
    p.requests_before_baseline = requests.size();
    auto kept = filter_baseline(requests, baseline);
    p.requests_after_baseline = kept.size();
    for (const auto& r : kept) {
      p.urls.insert(r.full_url);
      ++p.url_requests[r.full_url];
    }
    MatchContext ctx{options.origin_domain, &lists.suffixes};
    for (const auto& url : p.urls) {
      p.classifications[url] = classify_url(url, lists.ads, lists.trackers, lists.suffixes, ctx);
    }
  } catch (const std::exception& e) {
    AppProfile failed;
    failed.app_id = input.app_id;
    failed.metadata = p.metadata;
    failed.status = AppStatus::kFailed;
    failed.failure = e.what();
    return failed;
  }
  return p;
}

AnalyzeResult run_analyze(const CorpusManifest& manifest, const ScoringConfig& config,
                          const AnalyzeOptions& options) {
  auto provider = make_provider(manifest, options.offline);
  return run_analyze(manifest, config, options, *provider);
}

AnalyzeResult run_analyze(const CorpusManifest& manifest, const ScoringConfig& config,
                          const AnalyzeOptions& options, ReputationProvider& provider) {
  config.validate();
  if (manifest.entries.empty()) throw ConfigError("manifest lists no apps");
  const auto lists = load_lists(manifest);
  const auto baseline = load_baseline(manifest, options);

  std::vector<AppProfile> apps(manifest.entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < apps.size(); i = next++) {
      apps[i] = analyze_app(manifest.entries[i], lists, baseline, options);
    }
  };
  std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, apps.size());
  std::vector<std::jthread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::set<std::string> urls;
  std::set<std::string> domains;
  std::map<std::string, std::set<std::string>> fqdns_by_domain;
  std::map<std::string, std::set<std::string>> urls_by_fqdn;
  for (const auto& app : apps) {
    if (app.status != AppStatus::kOk) continue;
    for (const auto& [url, c] : app.classifications) {
      urls.insert(url);
      domains.insert(c.registrable_domain);
      fqdns_by_domain[c.registrable_domain].insert(c.fqdn);
      urls_by_fqdn[c.fqdn].insert(url);
    }
  }

  std::optional<ReputationCache> cache;
  if (manifest.reputation_cache) {
    cache.emplace(*manifest.reputation_cache);
  } else {
    cache.emplace();
  }
  ReputationClient client(provider, *cache, options.client, options.timing);
  std::vector<std::string> url_list(urls.begin(), urls.end());
  std::vector<std::string> domain_list(domains.begin(), domains.end());
  auto url_reports = client.lookup_or_query(url_list);
  auto domain_reports = client.lookup_or_query_domains(domain_list);

  for (auto& app : apps) {
    if (app.status != AppStatus::kOk) continue;
    for (const auto& url : app.urls) app.reports[url] = url_reports.at(url);
    app.counts = compute_counts(app);
    app.suspicion_score = app_suspicion_score(app, config, lists.suffixes);
  }

  std::map<std::string, DomainInfo> infos;
  for (const auto& domain : domains) {
    const auto& report = domain_reports.at(domain);
    DomainInfo info;
    info.domain = domain;
    info.fqdns = fqdns_by_domain[domain];
    info.status = report.status;
    if (report.status == ReportStatus::kOk) info.safety_verdict = report.safety_verdict;
    std::map<std::string, std::optional<std::string>> labels;
    std::map<std::string, std::size_t> weights;
    for (const auto& fqdn : info.fqdns) {
      auto it = report.categories.find(fqdn);
      labels[fqdn] = it == report.categories.end() ? std::nullopt : std::optional(it->second);
      weights[fqdn] = urls_by_fqdn[fqdn].size();
    }
    auto vote = majority_category(labels, domain, weights);
    info.category = vote.category;
    info.fqdn_votes = vote.fqdn_votes;
    infos.emplace(domain, std::move(info));
  }

  Provenance prov;
  prov.tool_version = std::string(tool_version());
  prov.ad_list_sha256 = lists.ads.content_hash();
  prov.tracker_list_sha256 = lists.trackers.content_hash();
  prov.suffix_list_sha256 = lists.suffixes.content_hash();
  prov.reputation_provider = provider.is_remote() ? provider.name() : "fixture";
  prov.alpha = config.alpha;
  prov.beta = config.beta;
  prov.suspicious_threshold = config.suspicious_threshold;
  prov.top_n = config.top_n;
  for (auto axis : config.axes) prov.axes.emplace_back(to_string(axis));
  for (const auto& entry : config.whitelist) {
    prov.whitelist[entry] = lists.suffixes.resolve(entry).domain;
  }
  prov.notes["domain_unit"] = "registrable domain (public suffix plus one label)";
  prov.notes["request_counts"] = "requests are reported before and after baseline filtering";
  prov.notes["ports"] = [&] {
    std::string s;
    for (auto port : options.pcap.ports) s += (s.empty() ? "" : ",") + std::to_string(port);
    return s;
  }();

  AnalyzeResult result;
  result.backend_calls = client.backend_calls();
  result.cache_hits = client.cache_hits();
  result.bundle = aggregate(std::move(apps), std::move(infos), std::move(prov));
  result.failed_apps = result.bundle.counts.failed_apps;
  return result;
}

}  // namespace appscope
