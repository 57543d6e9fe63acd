#include "appscope/trace_ingest.hpp"

namespace appscope {

std::vector<HttpRequest> filter_baseline(std::span<const HttpRequest> requests,
                                         const std::unordered_set<std::string>& baseline_urls) {
  std::vector<HttpRequest> out;
  out.reserve(requests.size());
  for (const auto& r : requests) {
    if (!baseline_urls.contains(r.full_url)) out.push_back(r);
  }
  return out;
}

}  // namespace appscope
