#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>

#include "appscope/reputation_cache.hpp"
#include "appscope/reputation_provider.hpp"

namespace appscope {

struct ClientOptions {
  std::size_t batch_size = 25;
  double queries_per_minute = 4.0;  // remote providers only
  int max_retries = 5;
  std::chrono::milliseconds initial_backoff{2000};
  std::chrono::milliseconds max_backoff{60000};
};

/// Clock and sleep hooks, replaceable in tests.
struct ClientTiming {
  std::function<std::chrono::steady_clock::time_point()> now = [] {
    return std::chrono::steady_clock::now();
  };
  std::function<void(std::chrono::steady_clock::duration)> sleep =
      [](std::chrono::steady_clock::duration d) { std::this_thread::sleep_for(d); };
};

/// Cache-first, batched, rate-limited access to a reputation provider.
///
/// All backend traffic goes through one dispatch lock, so concurrent callers
/// queue up behind each other. Transient failures are retried with
/// exponential backoff; a batch that still fails comes back as "unavailable"
/// reports, which are not cached. ProtocolError propagates.
class ReputationClient {
 public:
  ReputationClient(ReputationProvider& provider, ReputationCache& cache, ClientOptions options = {},
                   ClientTiming timing = {});

  std::map<std::string, UrlReport> lookup_or_query(std::span<const std::string> urls);
  std::map<std::string, DomainReport> lookup_or_query_domains(std::span<const std::string> domains);

  /// Backend requests issued so far, retries included.
  [[nodiscard]] std::size_t backend_calls() const { return backend_calls_; }
  [[nodiscard]] std::size_t cache_hits() const { return cache_hits_; }

 private:
  template <typename Report, typename Fetch, typename Unavailable>
  std::vector<Report> fetch_batch(std::span<const std::string> keys, Fetch fetch,
                                  Unavailable unavailable);
  void throttle();

  ReputationProvider& provider_;
  ReputationCache& cache_;
  ClientOptions options_;
  ClientTiming timing_;
  std::mutex dispatch_;
  std::optional<std::chrono::steady_clock::time_point> last_call_;
  std::size_t backend_calls_ = 0;
  std::size_t cache_hits_ = 0;
};

}  // namespace appscope
