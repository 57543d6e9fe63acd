#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "appscope/trace_ingest.hpp"

namespace {

// minimal Ethernet/IPv4/TCP capture writer, checksums left zero
class Capture {
 public:
  Capture() {
    put32(0xa1b2c3d4);
    put16(2);
    put16(4);
    put32(0);
    put32(0);
    put32(65535);
    put32(1);
  }

  void segment(std::uint32_t conn, std::uint32_t seq, std::uint8_t flags, const std::string& payload) {
    std::string f(14, '\0');
    f[12] = 0x08;
    std::string ip(20, '\0');
    ip[0] = 0x45;
    auto total = static_cast<std::uint16_t>(40 + payload.size());
    ip[2] = static_cast<char>(total >> 8);
    ip[3] = static_cast<char>(total);
    ip[8] = 64;
    ip[9] = 6;
    ip[12] = 10, ip[13] = 0, ip[14] = static_cast<char>(conn >> 8), ip[15] = static_cast<char>(conn);
    ip[16] = static_cast<char>(192), ip[17] = 0, ip[18] = 2, ip[19] = 1;
    std::string tcp(20, '\0');
    auto sport = static_cast<std::uint16_t>(20000 + conn);
    tcp[0] = static_cast<char>(sport >> 8);
    tcp[1] = static_cast<char>(sport);
    tcp[3] = 80;
    for (int i = 0; i < 4; ++i) tcp[4 + i] = static_cast<char>(seq >> (24 - 8 * i));
    tcp[12] = 0x50;
    tcp[13] = static_cast<char>(flags);
    tcp[14] = static_cast<char>(0xff);
    f += ip + tcp + payload;
    put32(ts_++);
    put32(0);
    put32(static_cast<std::uint32_t>(f.size()));
    put32(static_cast<std::uint32_t>(f.size()));
    out_ += f;
  }

  const std::string& bytes() const { return out_; }

 private:
  void put32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void put16(std::uint16_t v) {
    out_.push_back(static_cast<char>(v));
    out_.push_back(static_cast<char>(v >> 8));
  }
  std::string out_;
  std::uint32_t ts_ = 1400000000;
};

std::string build(int connections, int per_conn) {
  Capture c;
  for (int k = 0; k < connections; ++k) {
    auto conn = static_cast<std::uint32_t>(k);
    std::uint32_t seq = 1000;
    c.segment(conn, seq++, 0x02, "");
    for (int r = 0; r < per_conn; ++r) {
      std::string req = "GET /item/" + std::to_string(r) + "?c=" + std::to_string(k) +
                        " HTTP/1.1\r\nHost: h" + std::to_string(k % 50) + ".example.com\r\nUser-Agent: bench\r\n\r\n";
      c.segment(conn, seq, 0x18, req);
      seq += static_cast<std::uint32_t>(req.size());
    }
    c.segment(conn, seq, 0x11, "");
  }
  return c.bytes();
}

void BM_ParsePcap(benchmark::State& state) {
  auto bytes = build(static_cast<int>(state.range(0)), 10);
  std::size_t requests = 0;
  for (auto _ : state) {
    auto reqs = appscope::parse_pcap_bytes(bytes);
    requests = reqs.size();
    benchmark::DoNotOptimize(reqs);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes.size()));
  state.counters["requests"] = static_cast<double>(requests);
}
BENCHMARK(BM_ParsePcap)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
