#include <gtest/gtest.h>

#include <fstream>

#include "appscope/corpus.hpp"
#include "appscope/errors.hpp"
#include "test_paths.hpp"

using namespace appscope;
using namespace appscope::testing;

namespace {

struct Scratch {
  TempDir dir;
  Scratch() {
    for (const char* f : {"a.urllog", "b.pcap", "ads.txt", "trk.txt", "psl.dat", "meta.json"}) {
      std::ofstream(dir / f) << "";
    }
  }
  std::string lists() const {
    return R"("ad_list": "ads.txt", "tracker_list": "trk.txt", "suffix_list": "psl.dat")";
  }
  CorpusManifest parse(const std::string& text) const { return parse_manifest(text, dir.path()); }
};

}  // namespace

TEST(Manifest, BundledCorpusLoads) {
  auto m = load_manifest(test_data_dir() / "corpus" / "manifest.json");
  ASSERT_EQ(m.entries.size(), 5u);
  EXPECT_EQ(m.entries[1].kind, TraceKind::kPcap);
  EXPECT_EQ(m.entries[0].kind, TraceKind::kUrlLog);
  EXPECT_TRUE(std::filesystem::exists(m.entries[0].trace));
  EXPECT_TRUE(m.baseline);
  EXPECT_TRUE(m.reputation_fixtures);
  EXPECT_FALSE(m.reputation_cache);
}

TEST(Manifest, ResolvesRelativePaths) {
  Scratch s;
  auto m = s.parse(R"({"apps": [{"app_id": "x", "urllog": "a.urllog", "metadata": "meta.json"}], )" + s.lists() +
                   R"(, "reputation_cache": "cache/not-yet.json"})");
  EXPECT_EQ(m.entries[0].trace, s.dir / "a.urllog");
  EXPECT_EQ(*m.entries[0].metadata, s.dir / "meta.json");
  EXPECT_EQ(*m.reputation_cache, s.dir / "cache/not-yet.json");
}

TEST(Manifest, Errors) {
  Scratch s;
  auto bad = [&](const std::string& text) { EXPECT_THROW(s.parse(text), ConfigError) << text; };
  bad("not json");
  bad("[]");
  bad(R"({"apps": [], )" + s.lists() + "}");
  bad("{" + s.lists() + "}");
  bad(R"({"schema_version": 2, "apps": [{"app_id": "x", "urllog": "a.urllog"}], )" + s.lists() + "}");
  bad(R"({"apps": [{"app_id": "x", "urllog": "a.urllog"}, {"app_id": "x", "pcap": "b.pcap"}], )" + s.lists() + "}");
  bad(R"({"apps": [{"app_id": "x"}], )" + s.lists() + "}");
  bad(R"({"apps": [{"app_id": "x", "urllog": "a.urllog", "pcap": "b.pcap"}], )" + s.lists() + "}");
  bad(R"({"apps": [{"app_id": "x", "urllog": "missing.urllog"}], )" + s.lists() + "}");
  bad(R"({"apps": [{"app_id": "x", "urllog": "a.urllog", "metadata": "nope.json"}], )" + s.lists() + "}");
  bad(R"({"apps": [{"app_id": "", "urllog": "a.urllog"}], )" + s.lists() + "}");
  bad(R"({"apps": [{"urllog": "a.urllog"}], )" + s.lists() + "}");
  bad(R"({"apps": [{"app_id": "x", "urllog": "a.urllog"}], "ad_list": "ads.txt", "tracker_list": "trk.txt"})");
  bad(R"({"apps": [{"app_id": "x", "urllog": "a.urllog"}], "baseline": "gone.urllog", )" + s.lists() + "}");
  EXPECT_THROW(load_manifest(s.dir / "absent.json"), ConfigError);
}
