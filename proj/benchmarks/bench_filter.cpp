#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "appscope/filter_set.hpp"
#include "appscope/public_suffix.hpp"

namespace {

const appscope::FilterSet& easylist() {
  static const auto set = appscope::FilterSet::load(APPSCOPE_REPO_DATA_DIR "/easylist.txt");
  return set;
}

std::vector<std::string> sample_urls() {
  std::vector<std::string> urls;
  std::mt19937 rng(7);
  const char* hosts[] = {"www.example.com", "ads.doubleclick.net", "cdn.news-site.co.uk", "api.gamecloud.io",
                         "pagead2.googlesyndication.com", "static.shop.de"};
  const char* paths[] = {"/index.html", "/banner/300x250.gif", "/js/app.min.js", "/adserver/get?id=",
                         "/pixel.gif?u=", "/img/logo.png"};
  for (int i = 0; i < 1000; ++i) {
    urls.push_back(std::string("http://") + hosts[rng() % 6] + paths[rng() % 6] + std::to_string(rng() % 1000));
  }
  return urls;
}

void BM_CompileEasyList(benchmark::State& state) {
  for (auto _ : state) {
    auto set = appscope::FilterSet::load(APPSCOPE_REPO_DATA_DIR "/easylist.txt");
    benchmark::DoNotOptimize(set);
  }
}
BENCHMARK(BM_CompileEasyList)->Unit(benchmark::kMillisecond);

void BM_MatchEasyList(benchmark::State& state) {
  const auto& set = easylist();
  auto urls = sample_urls();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(set.match(urls[i++ % urls.size()]));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_MatchEasyList);

void BM_MatchWithOrigin(benchmark::State& state) {
  const auto& set = easylist();
  static const auto psl = appscope::PublicSuffixList::load(APPSCOPE_REPO_DATA_DIR "/public_suffix_list.dat");
  appscope::MatchContext ctx{"example.com", &psl};
  auto urls = sample_urls();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(set.match(urls[i++ % urls.size()], ctx));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_MatchWithOrigin);

}  // namespace

BENCHMARK_MAIN();
