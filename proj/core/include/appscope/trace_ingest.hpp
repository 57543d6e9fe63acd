#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "appscope/http_request.hpp"

namespace appscope {

/// Counters for the non-fatal problems met while reading a trace.
struct IngestStats {
  std::size_t packets = 0;
  std::size_t tcp_segments = 0;
  std::size_t malformed_packets = 0;
  std::size_t truncated_records = 0;
  std::size_t retransmissions = 0;
  std::size_t dropped_requests = 0;   // reorder buffer overflow
  std::size_t rejected_requests = 0;  // request heads we could not turn into a URL
  std::size_t malformed_lines = 0;    // url-log only
};

struct PcapOptions {
  std::set<std::uint16_t> ports{80};
  std::size_t reorder_limit = 64;
};

/// Every recoverable HTTP/1.x request sent to one of `options.ports`, in
/// timestamp order. Throws IoError / FormatError for an unreadable file or a
/// bad global header; bad packets only bump `stats`.
std::vector<HttpRequest> parse_pcap(const std::filesystem::path& path,
                                    const PcapOptions& options = {},
                                    IngestStats* stats = nullptr);

/// Same, over capture bytes already in memory.
std::vector<HttpRequest> parse_pcap_bytes(std::string bytes, const PcapOptions& options = {},
                                          IngestStats* stats = nullptr);

/// URL log: one `<epoch-seconds> <METHOD> <absolute-http-url>` per line,
/// `#` starts a comment line. Malformed lines are counted and skipped.
std::vector<HttpRequest> parse_urllog(const std::filesystem::path& path,
                                      IngestStats* stats = nullptr);
std::vector<HttpRequest> parse_urllog_text(std::string_view text, IngestStats* stats = nullptr);

/// Writes requests in the URL-log format. Timestamps use the shortest
/// representation that parses back to the same double.
void write_urllog(std::ostream& out, std::span<const HttpRequest> requests);

/// Requests whose full_url is not in `baseline_urls`, order preserved.
std::vector<HttpRequest> filter_baseline(std::span<const HttpRequest> requests,
                                         const std::unordered_set<std::string>& baseline_urls);

/// Reads a trace by extension: `.pcap`/`.cap` go through parse_pcap, anything
/// else is a URL log.
std::vector<HttpRequest> read_trace(const std::filesystem::path& path,
                                    const PcapOptions& options = {},
                                    IngestStats* stats = nullptr);

}  // namespace appscope
