#include "cli.hpp"

#include <thread>

#include "CLI11.hpp"
#include "appscope/classifier.hpp"
#include "appscope/errors.hpp"
#include "appscope/hash.hpp"
#include "appscope/pipeline.hpp"
#include "appscope/reputation_cache.hpp"

namespace appscope::cli {

namespace {

struct RunFlags {
  std::string corpus;
  std::string config;
  std::string out = "appscope-out";
  std::vector<std::string> formats{"json"};
  bool offline = false;
  std::vector<std::uint16_t> ports{80};
  std::string baseline;
  std::size_t jobs = 1;
  std::string origin;
};

void add_corpus_flags(CLI::App* cmd, RunFlags& f, bool required = true) {
  auto* opt = cmd->add_option("--corpus", f.corpus, "Corpus manifest (JSON)")->check(CLI::ExistingFile);
  if (required) opt->required();
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "Scoring configuration (JSON)")->check(CLI::ExistingFile);
  cmd->add_flag("--offline", f.offline, "Use reputation fixtures only, never the network");
  cmd->add_option("--ports", f.ports, "HTTP ports to extract from pcap traces")->delimiter(',');
  cmd->add_option("--baseline", f.baseline, "Baseline trace overriding the manifest")
      ->check(CLI::ExistingFile);
  cmd->add_option("--jobs", f.jobs, "Worker threads for per-app stages")->check(CLI::Range(1, 1024));
  cmd->add_option("--origin", f.origin, "Origin domain for $domain and $third-party options");
}

ScoringConfig scoring_config(const RunFlags& f) {
  if (f.config.empty()) return {};
  return load_scoring_config(f.config);
}

AnalyzeOptions analyze_options(const RunFlags& f) {
  AnalyzeOptions o;
  o.offline = f.offline;
  o.jobs = f.jobs;
  o.pcap.ports = {f.ports.begin(), f.ports.end()};
  if (!f.origin.empty()) o.origin_domain = f.origin;
  if (!f.baseline.empty()) o.baseline = f.baseline;
  return o;
}

int exit_code(const AnalyzeResult& r) {
  if (r.bundle.counts.failed_apps == 0) return kExitOk;
  return r.bundle.counts.failed_apps == r.bundle.counts.apps ? kExitInvalid : kExitPartial;
}

void report_failures(const ReportBundle& b, std::ostream& err) {
  for (const auto& app : b.apps) {
    if (app.status == AppStatus::kFailed) err << "app " << app.app_id << " failed: " << app.failure << '\n';
  }
}

std::size_t emit_all(const ReportBundle& b, const std::vector<std::string>& formats, const std::string& out) {
  std::vector<ReportFormat> parsed;
  for (const auto& f : formats) parsed.push_back(report_format_from_string(f));
  std::size_t files = 0;
  for (auto f : parsed) files += emit_report(b, f, out).size();
  return files;
}

void print_match(std::ostream& out, const std::string& label, const MatchResult& r) {
  out << label << ": ";
  if (r.matched) {
    out << "blocked by " << r.rule->raw << '\n';
  } else if (r.exception) {
    out << "allowed by exception " << r.exception->raw << " (would match " << r.rule->raw << ")\n";
  } else {
    out << "no match\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traffic classification and reputation scoring for app network traces", "appscope"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  RunFlags f;
  std::string url;
  std::string app_id;
  std::string input;
  std::vector<std::string> lists;
  std::string ad_list, tracker_list, suffix_list;

  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline over a corpus");
  add_corpus_flags(analyze, f);
  add_run_flags(analyze, f);
  analyze->add_option("--out", f.out, "Output directory");
  analyze->add_option("--format", f.formats, "json, csv or text (repeatable)");

  auto* match = app.add_subcommand("match", "Check one URL against filter lists");
  match->add_option("url", url, "http:// URL")->required();
  match->add_option("--list", lists, "Filter list (repeatable)")->check(CLI::ExistingFile);
  add_corpus_flags(match, f, false);
  match->add_option("--origin", f.origin, "Origin domain for $domain and $third-party options");

  auto* classify = app.add_subcommand("classify", "Classify one URL as ad, tracker or other");
  classify->add_option("url", url, "http:// URL")->required();
  add_corpus_flags(classify, f, false);
  classify->add_option("--ad-list", ad_list, "Ad filter list")->check(CLI::ExistingFile);
  classify->add_option("--tracker-list", tracker_list, "Tracker filter list")->check(CLI::ExistingFile);
  classify->add_option("--suffix-list", suffix_list, "Public suffix list")->check(CLI::ExistingFile);
  classify->add_option("--origin", f.origin, "Origin domain for $domain and $third-party options");

  auto* score = app.add_subcommand("score", "Score one app of a corpus");
  score->add_option("app", app_id, "app_id from the manifest")->required();
  add_corpus_flags(score, f);
  add_run_flags(score, f);

  auto* fetch = app.add_subcommand("fetch-reputation", "Warm the reputation cache for a corpus");
  add_corpus_flags(fetch, f);
  add_run_flags(fetch, f);

  auto* report = app.add_subcommand("report", "Re-emit a saved bundle");
  report->add_option("--in", input, "bundle.json from a previous analyze")->required()->check(CLI::ExistingFile);
  report->add_option("--out", f.out, "Output directory");
  report->add_option("--format", f.formats, "json, csv or text (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*analyze) {
      auto manifest = load_manifest(f.corpus);
      auto result = run_analyze(manifest, scoring_config(f), analyze_options(f));
      report_failures(result.bundle, err);
      auto files = emit_all(result.bundle, f.formats, f.out);
      const auto& c = result.bundle.counts;
      out << "apps " << c.apps << " (failed " << c.failed_apps << ", active " << c.active_apps << "), urls "
          << c.distinct_urls << ", domains " << c.distinct_domains << ", backend calls "
          << result.backend_calls << ", files " << files << " in " << f.out << '\n';
      return exit_code(result);
    }

    if (*match) {
      if (lists.empty() && f.corpus.empty()) {
        err << "match: give --list or --corpus\n";
        return kExitInvalid;
      }
      MatchContext ctx;
      if (!f.origin.empty()) ctx.origin_domain = f.origin;
      std::optional<ListSet> from_corpus;
      if (!f.corpus.empty()) {
        from_corpus = load_lists(load_manifest(f.corpus));
        ctx.suffixes = &from_corpus->suffixes;
        print_match(out, "ads", from_corpus->ads.match(url, ctx));
        print_match(out, "trackers", from_corpus->trackers.match(url, ctx));
      }
      for (const auto& path : lists) print_match(out, path, FilterSet::load(path).match(url, ctx));
      return kExitOk;
    }

    if (*classify) {
      ListSet ls;
      if (!f.corpus.empty()) {
        ls = load_lists(load_manifest(f.corpus));
      } else {
        if (ad_list.empty() || tracker_list.empty() || suffix_list.empty()) {
          err << "classify: give --corpus or all of --ad-list, --tracker-list, --suffix-list\n";
          return kExitInvalid;
        }
        ls = ListSet{FilterSet::load(ad_list), FilterSet::load(tracker_list), PublicSuffixList::load(suffix_list)};
      }
      MatchContext ctx{std::nullopt, &ls.suffixes};
      if (!f.origin.empty()) ctx.origin_domain = f.origin;
      auto c = classify_url(url, ls.ads, ls.trackers, ls.suffixes, ctx);
      out << "class: " << to_string(c.url_class) << '\n'
          << "rule: " << c.matched_rule.value_or("-") << '\n'
          << "fqdn: " << c.fqdn << '\n'
          << "registrable_domain: " << c.registrable_domain << '\n';
      return kExitOk;
    }

    if (*score) {
      auto manifest = load_manifest(f.corpus);
      std::erase_if(manifest.entries, [&](const AppTraceInput& e) { return e.app_id != app_id; });
      if (manifest.entries.empty()) {
        err << "score: no app " << app_id << " in " << f.corpus << '\n';
        return kExitInvalid;
      }
      auto result = run_analyze(manifest, scoring_config(f), analyze_options(f));
      const auto& p = result.bundle.apps.front();
      if (p.status == AppStatus::kFailed) {
        err << "app " << p.app_id << " failed: " << p.failure << '\n';
        return kExitInvalid;
      }
      out << "app: " << p.app_id << '\n'
          << "name: " << p.display_name() << '\n'
          << "urls: " << p.counts.distinct_urls << '\n'
          << "domains: " << p.counts.distinct_domains << '\n'
          << "ad_urls: " << p.counts.ad_urls << '\n'
          << "tracker_urls: " << p.counts.tracker_urls << '\n'
          << "suspicion_score: " << p.suspicion_score << '\n';
      return kExitOk;
    }

    if (*fetch) {
      auto manifest = load_manifest(f.corpus);
      auto result = run_analyze(manifest, scoring_config(f), analyze_options(f));
      report_failures(result.bundle, err);
      const auto& c = result.bundle.counts;
      out << "urls " << c.distinct_urls << " (reports " << c.urls_with_reports << ", unknown "
          << c.urls_unknown << ", unavailable " << c.urls_unavailable << "), backend calls "
          << result.backend_calls << ", cache hits " << result.cache_hits << '\n';
      return exit_code(result);
    }

    if (*report) {
      auto bundle = bundle_from_json(read_file(input));
      auto files = emit_all(bundle, f.formats, f.out);
      out << "files " << files << " in " << f.out << '\n';
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace appscope::cli
