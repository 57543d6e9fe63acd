// Acceptance suite: one PASS/FAIL line per criterion.
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "appscope/corpus.hpp"
#include "appscope/filter_set.hpp"
#include "appscope/pipeline.hpp"
#include "appscope/public_suffix.hpp"
#include "appscope/report.hpp"
#include "appscope/trace_ingest.hpp"
#include "cli.hpp"
#include "corpus_pcaps.hpp"
#include "json.hpp"
#include "pcap_builder.hpp"
#include "regex_oracle.hpp"
#include "rule_generator.hpp"
#include "score_oracle.hpp"
#include "socket_hook.hpp"
#include "test_paths.hpp"

using namespace appscope;
using namespace appscope::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string lf(std::string s) {
  std::erase(s, '\r');
  return s;
}

const PublicSuffixList& psl() {
  static const auto list = PublicSuffixList::load(repo_data_dir() / "public_suffix_list.dat");
  return list;
}

std::filesystem::path corpus_dir() { return test_data_dir() / "corpus"; }

// 1 ---------------------------------------------------------------------------

Outcome filter_oracle_equivalence() {
  Outcome o;
  auto start = Clock::now();
  RuleGenerator gen(20140701);
  auto registrable = [](std::string_view host) { return psl().registrable_domain(host); };
  std::map<std::string, std::size_t> coverage;
  std::size_t pairs = 0, agree = 0, blocked = 0;
  constexpr std::size_t kPairs = 12000;
  for (std::size_t i = 0; i < kPairs; ++i) {
    auto url = gen.url();
    auto rule = i % 3 == 0 ? gen.rule() : gen.rule_for(url);
    auto origin = gen.origin();
    std::vector<std::string> lines{rule};
    if (rule.starts_with("@@")) lines.insert(lines.begin(), "*");

    auto parsed = parse_rule(rule);
    if (auto* r = std::get_if<FilterRule>(&parsed)) {
      const char* kinds[] = {"host", "start", "end", "plain"};
      ++coverage[kinds[static_cast<int>(r->kind())]];
      if (r->is_exception) ++coverage["exception"];
      if (!r->options.include_domains.empty() || !r->options.exclude_domains.empty()) ++coverage["domain"];
      if (r->options.third_party == ThirdParty::kRequire) ++coverage["third-party"];
      if (r->options.third_party == ThirdParty::kForbid) ++coverage["first-party"];
      if (!r->options.unsupported_options.empty()) ++coverage["type"];
      for (const auto& t : r->pattern) {
        if (t.type == PatternToken::Type::kSeparator) ++coverage["separator"];
      }
    }

    auto set = FilterSet::compile(lines);
    MatchContext ctx{origin, &psl()};
    bool engine = set.match(url, ctx).matched;
    bool oracle = RegexOracle(lines, registrable).blocks(url, origin);
    ++pairs;
    blocked += engine ? 1 : 0;
    if (engine == oracle) {
      ++agree;
    } else {
      o.fail("disagreement on rule '" + rule + "' url '" + url + "' origin '" + origin.value_or("-") +
             "': engine " + (engine ? "blocks" : "allows"));
    }
  }
  double secs = seconds_since(start);
  for (const char* k : {"host", "start", "end", "plain", "exception", "domain", "third-party", "first-party",
                        "type", "separator"}) {
    if (coverage[k] == 0) o.fail(std::string("generator never produced ") + k + " rules");
  }
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream d;
    d << agree << "/" << pairs << " agree, " << blocked << " blocked, " << std::fixed;
    d.precision(1);
    d << secs << " s";
    o.detail = d.str();
  }
  return o;
}

// 2 ---------------------------------------------------------------------------

Outcome real_lists() {
  Outcome o;
  auto easylist = FilterSet::load(repo_data_dir() / "easylist.txt");
  auto easyprivacy = FilterSet::load(repo_data_dir() / "easyprivacy.txt");
  std::ostringstream d;
  d.precision(2);
  d << std::fixed;
  for (auto [name, set] : {std::pair{"easylist", &easylist}, std::pair{"easyprivacy", &easyprivacy}}) {
    const auto& s = set->stats();
    double ratio = static_cast<double>(s.blocking + s.exceptions) / static_cast<double>(s.request_rule_lines());
    d << name << " " << 100 * ratio << "% compiled; ";
    if (ratio < 0.95) o.fail(std::string(name) + " compiled only " + std::to_string(100 * ratio) + "%");
    if (s.blocking + s.exceptions + s.skipped != s.lines) o.fail(std::string(name) + " lines unaccounted for");
  }
  std::ifstream tsv(test_data_dir() / "probe_urls.tsv");
  std::size_t probes = 0, agree = 0, ads = 0, clean = 0;
  for (std::string line; std::getline(tsv, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string url, kind, want_el, want_ep;
    std::getline(fields, url, '\t');
    std::getline(fields, kind, '\t');
    std::getline(fields, want_el, '\t');
    std::getline(fields, want_ep, '\t');
    ++probes;
    (kind == "ad" ? ads : clean)++;
    bool el = easylist.match(url).matched;
    bool ep = easyprivacy.match(url).matched;
    if (el == (want_el == "block") && ep == (want_ep == "block")) {
      ++agree;
    } else {
      o.fail("probe " + url + " disagrees with expected verdicts");
    }
  }
  if (ads != 20 || clean != 20) o.fail("probe set must hold 20 ad and 20 clean URLs");
  if (o.pass) {
    d << "probes " << agree << "/" << probes << " agree";
    o.detail = d.str();
  }
  return o;
}

// 3 ---------------------------------------------------------------------------

Outcome eq1_exactness() {
  Outcome o;
  auto score = [](const std::vector<UrlTriple>& t) {
    return app_suspicion_score(profile_from_triples("app", t), ScoringConfig{}, psl());
  };
  auto close = [](double got, double want) {
    return want == 0 ? got == 0 : std::abs(got - want) / std::abs(want) <= 1e-9;
  };
  if (score({{"http://a.com/", 0, "a.com"}}) != 0) o.fail("no-suspicious example is not 0");
  std::vector<UrlTriple> two{{"http://a.com/1", 1, "a.com"}, {"http://b.com/1", 2, "b.com"}};
  if (!close(score(two), 18)) o.fail("two-domain example is not 18");
  std::vector<UrlTriple> white{{"http://a.com/1", 1, "a.com"}, {"http://api.airpush.com/1", 2, "airpush.com"}};
  if (!close(score(white), 1)) o.fail("whitelist example is not 1");

  std::mt19937_64 rng(1401);
  std::size_t random_ok = 0;
  for (int i = 0; i < 50; ++i) {
    auto t = random_triples(rng);
    double want = brute_force_score(t, default_whitelist_domains(), 3, 1);
    if (close(score(t), want)) {
      ++random_ok;
    } else {
      o.fail("random profile " + std::to_string(i) + " differs from brute force");
    }
  }

  std::uniform_int_distribution<int> bump(1, 20);
  std::size_t perturbations = 0;
  for (int i = 0; i < 1000; ++i) {
    auto t = random_triples(rng, 25);
    double base = score(t);
    auto p = t;
    switch (i % 3) {
      case 0: {
        const char* wl[] = {"xiti.com", "airpush.com", "scorecardresearch.com", "bluekai.com", "leadboltapps.net"};
        std::string d = wl[rng() % 5];
        p.push_back({"http://x." + d + "/perturb" + std::to_string(i), bump(rng), d});
        if (score(p) != base) o.fail("whitelisted URL changed the score at perturbation " + std::to_string(i));
        break;
      }
      case 1: {
        auto extra = random_triple(rng);
        extra.url += "/perturb" + std::to_string(i);
        extra.positives = bump(rng);
        p.push_back(extra);
        if (score(p) < base) o.fail("added suspicious URL lowered the score at " + std::to_string(i));
        break;
      }
      default: {
        if (p.empty()) break;
        auto& v = p[rng() % p.size()];
        v.positives = std::max(v.positives, 0) + bump(rng);
        if (score(p) < base) o.fail("raising p lowered the score at " + std::to_string(i));
      }
    }
    if (!close(score(p), brute_force_score(p, default_whitelist_domains(), 3, 1))) {
      o.fail("perturbed profile " + std::to_string(i) + " differs from brute force");
    }
    ++perturbations;
  }
  if (o.pass) {
    o.detail = "3 examples, " + std::to_string(random_ok) + "/50 random profiles, " +
               std::to_string(perturbations) + " perturbations";
  }
  return o;
}

// 4 ---------------------------------------------------------------------------

struct Embedded {
  std::string bytes;
  std::vector<std::pair<std::string, std::string>> expected;  // host, path
};

std::string post(const std::string& host, const std::string& path, const std::string& body) {
  return "POST " + path + " HTTP/1.1\r\nHost: " + host + "\r\nContent-Length: " + std::to_string(body.size()) +
         "\r\n\r\n" + body;
}

// K requests over connections of up to five requests (two when K is small).
// Connections cycle
// through: one segment per request, everything pipelined into one segment,
// requests split with the first half retransmitted, and halves reordered.
Embedded embed(std::size_t k) {
  Embedded e;
  PcapBuilder pcap;
  double ts = 100.0;
  const std::size_t per_conn = k <= 10 ? 2 : 5;
  const std::size_t shift = k == 1 ? 2 : 0;  // lone request goes split and retransmitted
  std::size_t conn = 0;
  for (std::size_t first = 0; first < k; first += per_conn, ++conn) {
    TcpConversation c(pcap, "10.0.2.15", static_cast<std::uint16_t>(30000 + conn), "198.51.100.9", 80,
                      static_cast<std::uint32_t>(1000 + conn * 7919 + (conn % 5 == 4 ? 4294960000u : 0)));
    c.open(ts += 0.01);
    std::vector<std::string> reqs;
    for (std::size_t i = first; i < std::min(k, first + per_conn); ++i) {
      std::string host = "h" + std::to_string(i % 7) + ".example" + std::to_string(i % 3) + ".com";
      std::string path = "/r/" + std::to_string(i) + "?q=" + std::to_string(i * 7);
      e.expected.emplace_back(host, path);
      reqs.push_back(i % 4 == 3 ? post(host, path, "id=" + std::to_string(i)) : http_get(host, path));
    }
    switch ((conn + shift) % 4) {
      case 0:
        for (const auto& r : reqs) c.send(ts += 0.01, r);
        break;
      case 1: {
        std::string all;
        for (const auto& r : reqs) all += r;
        c.send(ts += 0.01, all);
        break;
      }
      case 2:
        for (const auto& r : reqs) {
          auto half = r.size() / 2;
          auto at = c.send(ts += 0.01, std::string_view(r).substr(0, half));
          c.send_at(ts += 0.2, at, std::string_view(r).substr(0, half));
          c.send(ts += 0.01, std::string_view(r).substr(half));
        }
        break;
      default:
        for (const auto& r : reqs) {
          auto at = c.sent();
          auto half = r.size() / 2;
          c.send_at(ts += 0.01, at + half, std::string_view(r).substr(half));
          c.send_at(ts += 0.01, at, std::string_view(r).substr(0, half));
        }
    }
    c.reply(ts += 0.01, "HTTP/1.1 200 OK\r\nContent-Length: 0\r\n\r\n");
    c.close(ts += 0.01);
    pcap.add_udp(ts += 0.001, "10.0.2.15", 5353, "224.0.0.251", 5353, "noise");
  }
  e.bytes = pcap.bytes();
  return e;
}

Outcome pcap_extraction() {
  Outcome o;
  std::string detail;
  for (std::size_t k : {1u, 10u, 200u}) {
    auto e = embed(k);
    IngestStats stats;
    auto got = parse_pcap_bytes(e.bytes, {}, &stats);
    std::vector<std::pair<std::string, std::string>> seen;
    for (const auto& r : got) seen.emplace_back(r.host, r.path_and_query);
    auto want = e.expected;
    std::sort(seen.begin(), seen.end());
    std::sort(want.begin(), want.end());
    if (got.size() != k) o.fail("K=" + std::to_string(k) + " recovered " + std::to_string(got.size()));
    else if (seen != want) o.fail("K=" + std::to_string(k) + " hosts/paths differ");
    detail += "K=" + std::to_string(k) + " -> " + std::to_string(got.size()) + " (retransmissions " +
              std::to_string(stats.retransmissions) + "), ";
  }
  auto https = parse_pcap_bytes(vpn_app_pcap(), {}, nullptr);
  if (!https.empty()) o.fail("HTTPS-only capture yielded " + std::to_string(https.size()) + " requests");
  if (o.pass) o.detail = detail + "HTTPS-only -> 0";
  return o;
}

// 5 ---------------------------------------------------------------------------

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "appscope");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str() + e.str();
  return code;
}

Outcome golden_run() {
  Outcome o;
  if (slurp(corpus_dir() / "game.pcap") != game_app_pcap() || slurp(corpus_dir() / "vpn.pcap") != vpn_app_pcap()) {
    o.fail("committed corpus pcaps differ from the generator");
  }
  TempDir dir;
  double worst = 0;
  for (const char* run : {"run1", "run2"}) {
    auto start = Clock::now();
    std::string log;
    int code = cli({"analyze", "--offline", "--corpus", (corpus_dir() / "manifest.json").string(), "--out",
                    (dir / run).string(), "--format", "json", "--format", "text"},
                   &log);
    worst = std::max(worst, seconds_since(start));
    if (code != 0) o.fail(std::string(run) + " exited " + std::to_string(code) + ": " + log);
  }
  auto a = slurp(dir / "run1/bundle.json");
  auto b = slurp(dir / "run2/bundle.json");
  if (a.empty() || a != b) o.fail("two runs differ");
  if (a != lf(slurp(corpus_dir() / "golden/bundle.json"))) o.fail("bundle.json differs from golden");
  if (slurp(dir / "run1/report.txt") != lf(slurp(corpus_dir() / "golden/report.txt"))) {
    o.fail("report.txt differs from golden");
  }
  if (a.find('\r') != std::string::npos) o.fail("output has CR line endings");
  if (worst >= 10) o.fail("run took " + std::to_string(worst) + " s");
  if (o.pass) {
    std::ostringstream d;
    d.precision(2);
    d << std::fixed << "2 runs byte-identical to golden (" << a.size() << " bytes), slowest " << worst << " s";
    o.detail = d.str();
  }
  return o;
}

// 6 ---------------------------------------------------------------------------

ReportBundle analyze_corpus(std::size_t jobs = 1) {
  auto manifest = load_manifest(corpus_dir() / "manifest.json");
  AnalyzeOptions opts;
  opts.offline = true;
  opts.jobs = jobs;
  return run_analyze(manifest, ScoringConfig{}, opts).bundle;
}

Outcome statistics() {
  Outcome o;
  auto bundle = analyze_corpus(3);
  auto golden = nlohmann::json::parse(slurp(corpus_dir() / "golden/expected_stats.json"));
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
  std::size_t checked = 0;
  for (const auto& [category, want] : golden.at("urls_by_app_category").items()) {
    auto it = bundle.urls_by_app_category.find(category);
    if (it == bundle.urls_by_app_category.end()) {
      o.fail("no distribution for " + category);
      continue;
    }
    const auto& s = it->second;
    std::vector<double> outliers = want.at("outliers").get<std::vector<double>>();
    if (!near(s.min, want.at("min")) || !near(s.q1, want.at("q1")) || !near(s.median, want.at("median")) ||
        !near(s.q3, want.at("q3")) || !near(s.max, want.at("max")) || s.outliers != outliers) {
      o.fail("distribution of " + category + " differs from hand count");
    }
    ++checked;
  }
  if (bundle.urls_by_app_category.size() != golden.at("urls_by_app_category").size()) {
    o.fail("unexpected app categories in distribution table");
  }
  for (const auto& [row, want] : golden.at("category_matrix").items()) {
    auto it = bundle.category_matrix.find(row);
    if (it == bundle.category_matrix.end()) {
      o.fail("no matrix row " + row);
      continue;
    }
    if (want.is_null() != !it->second.has_value()) {
      o.fail("matrix row " + row + " presence differs");
      continue;
    }
    if (want.is_null()) continue;
    if (it->second->size() != want.size()) o.fail("matrix row " + row + " has other columns");
    for (const auto& [col, v] : want.items()) {
      auto cell = it->second->find(col);
      if (cell == it->second->end() || !near(cell->second, v.get<double>())) {
        o.fail("matrix cell " + row + "/" + col + " differs from hand count");
      }
    }
    ++checked;
  }
  if (bundle.category_matrix.size() != golden.at("category_matrix").size()) o.fail("unexpected matrix rows");
  for (const auto& [row, cells] : bundle.category_matrix) {
    if (!cells) continue;
    double sum = 0;
    for (const auto& [c, v] : *cells) sum += v;
    if (std::abs(sum - 100) > 1e-6) o.fail("matrix row " + row + " sums to " + std::to_string(sum));
  }
  if (o.pass) o.detail = std::to_string(checked) + " summaries/rows match, rows sum to 100";
  return o;
}

// 7 ---------------------------------------------------------------------------

Outcome hermeticity() {
  Outcome o;
  // the hook must see a deliberate socket
  reset_socket_count();
  int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd >= 0) ::close(fd);
  if (sockets_opened() != 1) o.fail("socket hook is not active");

  TempDir dir;
  auto manifest = load_manifest(corpus_dir() / "manifest.json");
  manifest.reputation_cache = dir / "cache.json";
  AnalyzeOptions opts;
  opts.offline = true;
  reset_socket_count();
  auto first = run_analyze(manifest, ScoringConfig{}, opts);
  auto second = run_analyze(manifest, ScoringConfig{}, opts);
  int sockets = sockets_opened();
  if (sockets != 0) o.fail(std::to_string(sockets) + " sockets opened in offline mode");
  if (first.backend_calls == 0) o.fail("first run issued no backend calls");
  if (second.backend_calls != 0) o.fail("second run issued " + std::to_string(second.backend_calls) + " calls");
  if (bundle_to_json(first.bundle) != bundle_to_json(second.bundle)) o.fail("cached run changed the bundle");
  if (o.pass) {
    o.detail = "0 sockets, backend calls " + std::to_string(first.backend_calls) + " then 0 (" +
               std::to_string(second.cache_hits) + " cache hits)";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"filter engine agrees with regex oracle", filter_oracle_equivalence},
      {"real EasyList/EasyPrivacy compile and probe set", real_lists},
      {"suspicion score exactness and properties", eq1_exactness},
      {"pcap extraction recovers embedded requests", pcap_extraction},
      {"offline golden run", golden_run},
      {"distribution and category matrix statistics", statistics},
      {"reputation hermeticity and cache idempotence", hermeticity},
  };
  int failed = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << n << " " << c.name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
