#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_paths.hpp"

using namespace appscope::testing;
namespace cli = appscope::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "appscope");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path corpus() { return test_data_dir() / "corpus"; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Manifest in `dir` with the corpus lists and the given app entries.
std::filesystem::path write_manifest(const TempDir& dir, const std::string& apps) {
  auto c = corpus().string();
  auto path = dir / "manifest.json";
  std::ofstream(path) << R"({"apps": )" << apps << R"(, "ad_list": ")" << c << R"(/lists/ads.txt", "tracker_list": ")"
                      << c << R"(/lists/trackers.txt", "suffix_list": ")" << c
                      << R"(/lists/suffixes.dat", "reputation_fixtures": ")" << c << R"(/fixtures"})";
  return path;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"analyze"}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"analyze", "--corpus", "/no/such/manifest.json"}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(run({"match"}).code, cli::kExitInvalid);
}

TEST(Cli, EmptyManifestIsInvalid) {
  TempDir dir;
  auto m = write_manifest(dir, "[]");
  auto r = run({"analyze", "--offline", "--corpus", m.string(), "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, cli::kExitInvalid);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, AnalyzeBundledCorpus) {
  TempDir dir;
  auto r = run({"analyze", "--offline", "--corpus", (corpus() / "manifest.json").string(), "--out",
                (dir / "out").string(), "--format", "json", "--format", "csv", "--format", "text"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("apps 5 (failed 0, active 4)"), std::string::npos) << r.out;
  EXPECT_TRUE(std::filesystem::exists(dir / "out/bundle.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "out/report.txt"));
  EXPECT_TRUE(std::filesystem::exists(dir / "out/top_suspicion.csv"));

  auto again = run({"report", "--in", (dir / "out/bundle.json").string(), "--out", (dir / "re").string()});
  EXPECT_EQ(again.code, cli::kExitOk) << again.err;
  EXPECT_EQ(slurp(dir / "re/bundle.json"), slurp(dir / "out/bundle.json"));
}

TEST(Cli, PartialAndTotalFailure) {
  TempDir dir;
  std::ofstream(dir / "broken.pcap") << "definitely not a capture";
  auto good = (corpus() / "logs/news.urllog").string();
  auto partial = write_manifest(dir, R"([{"app_id": "ok", "urllog": ")" + good +
                                         R"("}, {"app_id": "bad", "pcap": "broken.pcap"}])");
  auto r = run({"analyze", "--offline", "--corpus", partial.string(), "--out", (dir / "o1").string()});
  EXPECT_EQ(r.code, cli::kExitPartial);
  EXPECT_NE(r.err.find("app bad failed"), std::string::npos);

  auto total = write_manifest(dir, R"([{"app_id": "bad", "pcap": "broken.pcap"}])");
  EXPECT_EQ(run({"analyze", "--offline", "--corpus", total.string(), "--out", (dir / "o2").string()}).code,
            cli::kExitInvalid);
}

TEST(Cli, Match) {
  auto lists = corpus() / "lists";
  auto r = run({"match", "http://ad.doubleclick.net/x", "--list", (lists / "ads.txt").string()});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("blocked by ||doubleclick.net^"), std::string::npos) << r.out;
  auto e = run({"match", "http://x.adnet.io/ok/1", "--list", (lists / "ads.txt").string()});
  EXPECT_NE(e.out.find("allowed by exception @@||adnet.io/ok/ (would match ||adnet.io^$third-party)"),
            std::string::npos)
      << e.out;
  auto n = run({"match", "http://example.com/", "--corpus", (corpus() / "manifest.json").string()});
  EXPECT_NE(n.out.find("ads: no match"), std::string::npos);
  EXPECT_NE(n.out.find("trackers: no match"), std::string::npos);
  EXPECT_EQ(run({"match", "ftp://example.com/", "--list", (lists / "ads.txt").string()}).code, cli::kExitInvalid);
}

TEST(Cli, Classify) {
  auto r = run({"classify", "http://www.google-analytics.com/collect?v=1", "--corpus",
                (corpus() / "manifest.json").string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("class: tracker"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("registrable_domain: google-analytics.com"), std::string::npos);
  EXPECT_EQ(run({"classify", "http://x.com/", "--ad-list", "/dev/null"}).code, cli::kExitInvalid);
}

TEST(Cli, ScoreOneApp) {
  auto r = run({"score", "com.superflash.light", "--offline", "--corpus", (corpus() / "manifest.json").string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("suspicion_score: 306\n"), std::string::npos) << r.out;
  EXPECT_EQ(run({"score", "nope", "--offline", "--corpus", (corpus() / "manifest.json").string()}).code,
            cli::kExitInvalid);
}

TEST(Cli, FetchReputation) {
  auto r = run({"fetch-reputation", "--offline", "--corpus", (corpus() / "manifest.json").string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("unknown 2"), std::string::npos) << r.out;
}
