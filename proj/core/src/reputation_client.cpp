#include "appscope/reputation_client.hpp"

#include <algorithm>
#include <set>

#include "appscope/errors.hpp"

namespace appscope {

namespace {

std::string describe(std::span<const std::string> batch) {
  std::string s = "batch of " + std::to_string(batch.size());
  if (!batch.empty()) s += " starting at " + batch.front();
  return s;
}

template <typename Report, typename Key>
void check_batch(std::span<const std::string> batch, const std::vector<Report>& reports, Key key) {
  if (reports.size() != batch.size()) {
    throw ProtocolError("reputation backend returned " + std::to_string(reports.size()) + " reports for " +
                        describe(batch));
  }
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (key(reports[i]) != batch[i]) {
      throw ProtocolError("reputation backend answered " + key(reports[i]) + " for " + batch[i] + " in " +
                          describe(batch));
    }
  }
}

std::vector<std::string> unique_in_order(std::span<const std::string> keys) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& k : keys) {
    if (seen.insert(k).second) out.push_back(k);
  }
  return out;
}

}  // namespace

ReputationClient::ReputationClient(ReputationProvider& provider, ReputationCache& cache,
                                   ClientOptions options, ClientTiming timing)
    : provider_(provider), cache_(cache), options_(options), timing_(std::move(timing)) {
  if (options_.batch_size == 0) throw ConfigError("reputation batch size must be positive");
  if (options_.queries_per_minute <= 0) throw ConfigError("rate limit must be positive");
}

void ReputationClient::throttle() {
  if (!provider_.is_remote()) return;
  auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(60.0 / options_.queries_per_minute));
  if (last_call_) {
    auto ready = *last_call_ + interval;
    auto now = timing_.now();
    if (now < ready) timing_.sleep(ready - now);
  }
  last_call_ = timing_.now();
}

template <typename Report, typename Fetch, typename Unavailable>
std::vector<Report> ReputationClient::fetch_batch(std::span<const std::string> keys, Fetch fetch,
                                                  Unavailable unavailable) {
  auto backoff = std::chrono::duration_cast<std::chrono::steady_clock::duration>(options_.initial_backoff);
  auto cap = std::chrono::duration_cast<std::chrono::steady_clock::duration>(options_.max_backoff);
  for (int attempt = 0;; ++attempt) {
    throttle();
    ++backend_calls_;
    try {
      return fetch(keys);
    } catch (const TransientError&) {
      if (attempt >= options_.max_retries) break;
      timing_.sleep(backoff);
      backoff = std::min(backoff * 2, cap);
    }
  }
  std::vector<Report> out;
  for (const auto& k : keys) out.push_back(unavailable(k));
  return out;
}

std::map<std::string, UrlReport> ReputationClient::lookup_or_query(std::span<const std::string> urls) {
  std::lock_guard lock(dispatch_);
  std::map<std::string, UrlReport> out;
  std::vector<std::string> misses;
  for (auto& url : unique_in_order(urls)) {
    if (auto hit = cache_.find_url(url)) {
      ++cache_hits_;
      out.emplace(url, std::move(*hit));
    } else {
      misses.push_back(std::move(url));
    }
  }
  std::span<const std::string> pending(misses);
  while (!pending.empty()) {
    auto batch = pending.first(std::min(options_.batch_size, pending.size()));
    pending = pending.subspan(batch.size());
    auto reports = fetch_batch<UrlReport>(
        batch, [&](std::span<const std::string> keys) { return provider_.fetch_url_reports(keys); },
        [](const std::string& k) { return unavailable_url_report(k); });
    check_batch(batch, reports, [](const UrlReport& r) { return r.url; });
    for (auto& r : reports) {
      cache_.put(r);
      out[r.url] = std::move(r);
    }
    cache_.flush();
  }
  return out;
}

std::map<std::string, DomainReport> ReputationClient::lookup_or_query_domains(
    std::span<const std::string> domains) {
  std::lock_guard lock(dispatch_);
  std::map<std::string, DomainReport> out;
  std::vector<std::string> misses;
  for (auto& d : unique_in_order(domains)) {
    if (auto hit = cache_.find_domain(d)) {
      ++cache_hits_;
      out.emplace(d, std::move(*hit));
    } else {
      misses.push_back(std::move(d));
    }
  }
  std::span<const std::string> pending(misses);
  while (!pending.empty()) {
    auto batch = pending.first(std::min(options_.batch_size, pending.size()));
    pending = pending.subspan(batch.size());
    auto reports = fetch_batch<DomainReport>(
        batch, [&](std::span<const std::string> keys) { return provider_.fetch_domain_reports(keys); },
        [](const std::string& k) { return unavailable_domain_report(k); });
    check_batch(batch, reports, [](const DomainReport& r) { return r.registrable_domain; });
    for (auto& r : reports) {
      cache_.put(r);
      out[r.registrable_domain] = std::move(r);
    }
    cache_.flush();
  }
  return out;
}

}  // namespace appscope
