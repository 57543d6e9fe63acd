#include <algorithm>
#include <map>
#include <memory>
#include <tuple>

#include "appscope/http_extract.hpp"
#include "appscope/pcap_reader.hpp"
#include "appscope/tcp_stream.hpp"
#include "appscope/trace_ingest.hpp"

namespace appscope {

namespace {

using FlowKey = std::tuple<std::string, std::uint16_t, std::string, std::uint16_t>;

struct Flow {
  explicit Flow(std::size_t reorder_limit, Endpoint client, Endpoint server)
      : stream(reorder_limit), extractor(std::move(client), std::move(server)) {}
  TcpStream stream;
  HttpRequestExtractor extractor;
};

std::vector<HttpRequest> extract(PcapReader& reader, const PcapOptions& options,
                                 IngestStats* stats) {
  IngestStats local;
  std::map<FlowKey, std::unique_ptr<Flow>> flows;
  std::vector<HttpRequest> requests;

  PcapPacket packet;
  TcpSegment segment;
  while (reader.next(packet)) {
    ++local.packets;
    switch (decode_tcp(reader.link_type(), packet.data, segment)) {
      case DecodeStatus::kMalformed: ++local.malformed_packets; continue;
      case DecodeStatus::kNotTcp: continue;
      case DecodeStatus::kTcp: break;
    }
    ++local.tcp_segments;
    if (!options.ports.contains(segment.dst_port)) continue;

    FlowKey key{segment.src_addr, segment.src_port, segment.dst_addr, segment.dst_port};
    auto it = flows.find(key);
    if (it == flows.end() || (segment.syn && it->second->stream.data_offset() > 0)) {
      // A fresh SYN on a known 4-tuple starts a new connection.
      if (it != flows.end()) {
        local.retransmissions += it->second->stream.retransmissions();
        local.dropped_requests += it->second->stream.dropped_requests();
        local.rejected_requests += it->second->extractor.rejected_requests();
        flows.erase(it);
      }
      auto flow = std::make_unique<Flow>(options.reorder_limit,
                                         Endpoint{segment.src_addr, segment.src_port},
                                         Endpoint{segment.dst_addr, segment.dst_port});
      it = flows.emplace(key, std::move(flow)).first;
    }
    Flow& flow = *it->second;
    flow.stream.on_segment(segment.seq, segment.syn, segment.payload, packet.timestamp);
    flow.extractor.drain(flow.stream, requests);
  }

  for (const auto& [key, flow] : flows) {
    local.retransmissions += flow->stream.retransmissions();
    local.dropped_requests += flow->stream.dropped_requests();
    local.rejected_requests += flow->extractor.rejected_requests();
  }
  local.truncated_records = reader.truncated_records();
  if (stats) {
    stats->packets += local.packets;
    stats->tcp_segments += local.tcp_segments;
    stats->malformed_packets += local.malformed_packets;
    stats->truncated_records += local.truncated_records;
    stats->retransmissions += local.retransmissions;
    stats->dropped_requests += local.dropped_requests;
    stats->rejected_requests += local.rejected_requests;
  }
  std::stable_sort(requests.begin(), requests.end(),
                   [](const HttpRequest& a, const HttpRequest& b) { return a.timestamp < b.timestamp; });
  return requests;
}

}  // namespace

std::vector<HttpRequest> parse_pcap(const std::filesystem::path& path, const PcapOptions& options,
                                    IngestStats* stats) {
  PcapReader reader(path);
  return extract(reader, options, stats);
}

std::vector<HttpRequest> parse_pcap_bytes(std::string bytes, const PcapOptions& options,
                                          IngestStats* stats) {
  PcapReader reader(std::move(bytes));
  return extract(reader, options, stats);
}

std::vector<HttpRequest> read_trace(const std::filesystem::path& path, const PcapOptions& options,
                                    IngestStats* stats) {
  auto ext = path.extension().string();
  if (ext == ".pcap" || ext == ".cap") return parse_pcap(path, options, stats);
  return parse_urllog(path, stats);
}

}  // namespace appscope
