#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "appscope/errors.hpp"
#include "appscope/report.hpp"
#include "test_paths.hpp"

using namespace appscope;
using namespace appscope::testing;

namespace {

void add_url(AppProfile& p, const std::string& url, const std::string& domain, UrlClass cls, int positives = -1) {
  p.urls.insert(url);
  p.url_requests[url] += 1;
  ++p.requests_before_baseline;
  ++p.requests_after_baseline;
  UrlClassification c;
  c.url = url;
  c.url_class = cls;
  if (cls != UrlClass::kOther) c.matched_rule = "||" + domain + "^";
  c.fqdn = "www." + domain;
  c.registrable_domain = domain;
  p.classifications[url] = c;
  UrlReport r = unknown_url_report(url);
  if (positives >= 0) {
    r.status = ReportStatus::kOk;
    r.total_engines = 4;
    r.positives = positives;
    for (int i = 0; i < 4; ++i) r.engine_verdicts["e" + std::to_string(i)] = i < positives;
  }
  p.reports[url] = r;
}

AppProfile app(std::string id, std::string name, std::string category) {
  AppProfile p;
  p.app_id = std::move(id);
  p.metadata.name = std::move(name);
  p.metadata.category = std::move(category);
  return p;
}

DomainInfo info(std::string domain, std::string category, std::optional<SafetyVerdict> v) {
  DomainInfo d;
  d.domain = domain;
  d.category = std::move(category);
  d.fqdns = {"www." + domain};
  d.fqdn_votes = {{d.category, 1}};
  d.status = v ? ReportStatus::kOk : ReportStatus::kUnknown;
  d.safety_verdict = v;
  return d;
}

ReportBundle sample() {
  auto a = app("a", "Alpha", "GAME");
  add_url(a, "http://www.ads.com/1", "ads.com", UrlClass::kAd, 0);
  add_url(a, "http://www.ads.com/2", "ads.com", UrlClass::kAd, 2);
  add_url(a, "http://www.trk.com/t", "trk.com", UrlClass::kTracker, 0);
  a.counts = compute_counts(a);
  a.suspicion_score = 8;

  auto b = app("b", "Beta, \"the\" app", "GAME");
  add_url(b, "http://www.ads.com/1", "ads.com", UrlClass::kAd, 0);
  add_url(b, "http://www.news.com/", "news.com", UrlClass::kOther);
  b.counts = compute_counts(b);

  auto c = app("c", "Gamma", "TOOLS");
  c.counts = compute_counts(c);

  auto d = app("d", "Delta", "TOOLS");
  d.status = AppStatus::kFailed;
  d.failure = "truncated pcap";

  std::map<std::string, DomainInfo> domains{{"ads.com", info("ads.com", "ads", SafetyVerdict::kMalicious)},
                                            {"trk.com", info("trk.com", "IT", SafetyVerdict::kSafe)},
                                            {"news.com", info("news.com", "news", std::nullopt)}};
  Provenance prov;
  prov.tool_version = "test";
  prov.ad_list_sha256 = std::string(64, 'a');
  prov.tracker_list_sha256 = std::string(64, 'b');
  prov.suffix_list_sha256 = std::string(64, 'c');
  prov.reputation_provider = "fixture";
  prov.axes = {"by_urls", "by_ad_urls", "by_suspicion"};
  prov.top_n = 2;
  prov.whitelist = {{"api.airpush.com", "airpush.com"}};
  prov.notes = {{"k", "v"}};
  return aggregate({a, b, c, d}, domains, prov);
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Aggregate, Counts) {
  auto b = sample();
  EXPECT_EQ(b.counts.apps, 4u);
  EXPECT_EQ(b.counts.failed_apps, 1u);
  EXPECT_EQ(b.counts.active_apps, 2u);
  EXPECT_EQ(b.counts.app_url_pairs, 5u);
  EXPECT_EQ(b.counts.distinct_urls, 4u);
  EXPECT_EQ(b.counts.distinct_domains, 3u);
  EXPECT_EQ(b.counts.urls_with_reports, 3u);
  EXPECT_EQ(b.counts.urls_unknown, 1u);
  EXPECT_GE(b.counts.app_url_pairs, b.counts.distinct_urls);
}

TEST(Aggregate, Tables) {
  auto b = sample();
  // popularity is a fraction of the three analyzed apps
  ASSERT_EQ(b.domain_popularity.size(), 3u);
  EXPECT_EQ(b.domain_popularity[0].domain, "ads.com");
  EXPECT_EQ(b.domain_popularity[0].apps, 2u);
  EXPECT_DOUBLE_EQ(b.domain_popularity[0].fraction, 2.0 / 3.0);

  ASSERT_EQ(b.ad_domains.size(), 1u);
  EXPECT_EQ(b.ad_domains[0].urls, 3u);
  EXPECT_DOUBLE_EQ(b.ad_domains[0].percent, 100.0);
  EXPECT_EQ(b.tracker_domains[0].domain, "trk.com");

  EXPECT_DOUBLE_EQ(b.safety_histogram.at("malicious"), 0.5);
  EXPECT_DOUBLE_EQ(b.safety_histogram.at("safe"), 0.5);
  EXPECT_DOUBLE_EQ(b.safety_histogram.at("unsure"), 0.0);
  ASSERT_EQ(b.malicious_by_category.size(), 2u);
  EXPECT_EQ(b.malicious_by_category[0].category, "ads");
  EXPECT_DOUBLE_EQ(b.malicious_by_category[0].percent, 100.0);

  EXPECT_DOUBLE_EQ(b.url_positives_histogram.at(0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(b.url_positives_histogram.at(2), 1.0 / 3.0);

  ASSERT_EQ(b.top.at("by_urls").size(), 2u);
  EXPECT_EQ(b.top.at("by_urls")[0].app_id, "a");
  EXPECT_EQ(b.top.at("by_suspicion")[0].value, 8.0);
  EXPECT_FALSE(b.top.count("by_domains"));

  EXPECT_FALSE(b.category_matrix.at("TOOLS").has_value());
  auto game = *b.category_matrix.at("GAME");
  EXPECT_NEAR(game.at("ads") + game.at("IT") + game.at("news"), 100.0, 1e-9);

  auto tools = b.urls_by_app_category.at("TOOLS");
  EXPECT_EQ(tools.max, 0);
  auto cdf = b.cdfs.at("urls");
  ASSERT_EQ(cdf.size(), 3u);
  EXPECT_EQ(cdf.back(), (std::pair<double, double>{3, 1.0}));
}

TEST(Aggregate, RecomputableFromProfiles) {
  auto b = sample();
  auto again = aggregate(b.apps, b.domains, b.provenance);
  EXPECT_EQ(again, b);
}

TEST(ReportJson, RoundTrip) {
  auto b = sample();
  auto text = bundle_to_json(b);
  auto back = bundle_from_json(text);
  EXPECT_EQ(back, b);
  EXPECT_EQ(bundle_to_json(back), text);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(ReportJson, Rejects) {
  EXPECT_THROW(bundle_from_json("{"), FormatError);
  EXPECT_THROW(bundle_from_json(R"({"schema_version": 1})"), FormatError);
}

TEST(ReportCsv, TopTableWithTwoRows) {
  auto csv = render_csv_tables(sample());
  const auto& top = csv.at("top_urls");
  EXPECT_EQ(lines(top), 3u);
  EXPECT_EQ(top.substr(0, top.find('\n')), "rank,app_id,name,value");
  EXPECT_NE(top.find("2,b,\"Beta, \"\"the\"\" app\",2\n"), std::string::npos);
}

TEST(ReportCsv, NumberFormats) {
  auto csv = render_csv_tables(sample());
  EXPECT_NE(csv.at("domain_popularity").find("ads.com,2,0.667\n"), std::string::npos);
  EXPECT_NE(csv.at("ad_domains").find("ads.com,3,100.0\n"), std::string::npos);
  EXPECT_NE(csv.at("top_suspicion").find("1,a,Alpha,8.000\n"), std::string::npos);
  EXPECT_NE(csv.at("safety_histogram").find("malicious,0.500\n"), std::string::npos);
  EXPECT_TRUE(csv.count("provenance"));
  EXPECT_TRUE(csv.count("category_matrix"));
}

TEST(ReportText, AlignedAndTruncated) {
  auto text = render_text(sample());
  EXPECT_EQ(text.rfind("appscope report (tool test)", 0), 0u);
  EXPECT_NE(text.find("Top apps by_urls"), std::string::npos);
  EXPECT_NE(text.find("Beta, \"the\" app"), std::string::npos);
  EXPECT_NE(text.find("(1 more rows)"), std::string::npos);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(render_text(sample()), text);
}

TEST(EmitReport, WritesEachFormat) {
  TempDir dir;
  auto b = sample();
  auto json_files = emit_report(b, ReportFormat::kJson, dir / "out");
  EXPECT_TRUE(std::filesystem::exists(dir / "out/bundle.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "out/tables/top_urls.json"));
  EXPECT_GT(json_files.size(), 5u);
  std::ifstream in(dir / "out/bundle.json");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), bundle_to_json(b));

  auto csv_files = emit_report(b, ReportFormat::kCsv, dir / "out");
  EXPECT_TRUE(std::filesystem::exists(dir / "out/counts.csv"));
  EXPECT_EQ(csv_files.size(), render_csv_tables(b).size());
  auto txt = emit_report(b, ReportFormat::kText, dir / "out");
  ASSERT_EQ(txt.size(), 1u);
  EXPECT_EQ(txt[0].filename(), "report.txt");
}

TEST(EmitReport, UnwritableDirectory) {
  TempDir dir;
  std::ofstream(dir / "file") << "x";
  EXPECT_THROW(emit_report(sample(), ReportFormat::kJson, dir / "file" / "sub"), IoError);
}

TEST(ReportFormat, Parse) {
  EXPECT_EQ(report_format_from_string("json"), ReportFormat::kJson);
  EXPECT_EQ(report_format_from_string("csv"), ReportFormat::kCsv);
  EXPECT_EQ(report_format_from_string("text"), ReportFormat::kText);
  EXPECT_THROW(report_format_from_string("xml"), ConfigError);
}
