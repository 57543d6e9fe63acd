#include "appscope/pcap_reader.hpp"

#include <arpa/inet.h>

#include <cstring>

#include "appscope/errors.hpp"
#include "appscope/hash.hpp"

namespace appscope {

namespace {

constexpr std::uint32_t kMagicMicros = 0xa1b2c3d4;
constexpr std::uint32_t kMagicNanos = 0xa1b23c4d;
constexpr std::size_t kGlobalHeaderSize = 24;
constexpr std::size_t kRecordHeaderSize = 16;
constexpr std::uint32_t kMaxRecordSize = 256 * 1024;

std::uint16_t be16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] << 8 | p[1]); }
std::uint32_t be32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} << 24 | std::uint32_t{p[1]} << 16 | std::uint32_t{p[2]} << 8 | p[3];
}

std::uint32_t byteswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00) | ((v << 8) & 0xff0000) | (v << 24);
}

std::string format_ip(int family, const std::uint8_t* addr) {
  char buf[INET6_ADDRSTRLEN] = {};
  inet_ntop(family, addr, buf, sizeof buf);
  return buf;
}

DecodeStatus decode_tcp_header(std::span<const std::uint8_t> ip_payload, TcpSegment& out) {
  if (ip_payload.size() < 20) return DecodeStatus::kMalformed;
  const auto* tcp = ip_payload.data();
  std::size_t header_len = static_cast<std::size_t>(tcp[12] >> 4) * 4;
  if (header_len < 20 || header_len > ip_payload.size()) return DecodeStatus::kMalformed;
  out.src_port = be16(tcp);
  out.dst_port = be16(tcp + 2);
  out.seq = be32(tcp + 4);
  std::uint8_t flags = tcp[13];
  out.fin = flags & 0x01;
  out.syn = flags & 0x02;
  out.rst = flags & 0x04;
  out.payload = ip_payload.subspan(header_len);
  return DecodeStatus::kTcp;
}

DecodeStatus decode_ipv4(std::span<const std::uint8_t> packet, TcpSegment& out) {
  if (packet.size() < 20) return DecodeStatus::kMalformed;
  const auto* ip = packet.data();
  std::size_t ihl = static_cast<std::size_t>(ip[0] & 0x0f) * 4;
  std::size_t total = be16(ip + 2);
  if (ihl < 20 || total < ihl || ihl > packet.size()) return DecodeStatus::kMalformed;
  // Captures may pad short frames; trust the IP length, but never past the buffer.
  if (total > packet.size()) total = packet.size();
  std::uint16_t frag = be16(ip + 6);
  if ((frag & 0x1fff) != 0 || (frag & 0x2000) != 0) return DecodeStatus::kNotTcp;
  if (ip[9] != 6) return DecodeStatus::kNotTcp;
  out.src_addr = format_ip(AF_INET, ip + 12);
  out.dst_addr = format_ip(AF_INET, ip + 16);
  return decode_tcp_header(packet.subspan(ihl, total - ihl), out);
}

DecodeStatus decode_ipv6(std::span<const std::uint8_t> packet, TcpSegment& out) {
  if (packet.size() < 40) return DecodeStatus::kMalformed;
  const auto* ip = packet.data();
  std::size_t payload_len = be16(ip + 4);
  std::uint8_t next = ip[6];
  std::size_t offset = 40;
  std::size_t end = std::min(packet.size(), offset + payload_len);
  // Walk the common extension headers; fragments are out of scope.
  while (next == 0 || next == 43 || next == 60) {
    if (offset + 8 > end) return DecodeStatus::kMalformed;
    next = ip[offset];
    offset += (static_cast<std::size_t>(ip[offset + 1]) + 1) * 8;
  }
  if (next != 6) return DecodeStatus::kNotTcp;
  if (offset > end) return DecodeStatus::kMalformed;
  out.src_addr = format_ip(AF_INET6, ip + 8);
  out.dst_addr = format_ip(AF_INET6, ip + 24);
  return decode_tcp_header(packet.subspan(offset, end - offset), out);
}

DecodeStatus decode_ip(std::span<const std::uint8_t> packet, TcpSegment& out) {
  if (packet.empty()) return DecodeStatus::kMalformed;
  switch (packet[0] >> 4) {
    case 4: return decode_ipv4(packet, out);
    case 6: return decode_ipv6(packet, out);
    default: return DecodeStatus::kMalformed;
  }
}

}  // namespace

PcapReader::PcapReader(const std::filesystem::path& path) : bytes_(read_file(path)) {
  parse_header();
}

PcapReader::PcapReader(std::string bytes) : bytes_(std::move(bytes)) { parse_header(); }

std::uint32_t PcapReader::read_u32(std::size_t offset) const {
  std::uint32_t v;
  std::memcpy(&v, bytes_.data() + offset, sizeof v);
  return swapped_ ? byteswap32(v) : v;
}

void PcapReader::parse_header() {
  if (bytes_.size() < kGlobalHeaderSize) throw FormatError("pcap: file shorter than global header");
  std::uint32_t magic;
  std::memcpy(&magic, bytes_.data(), sizeof magic);
  if (magic == kMagicMicros || magic == kMagicNanos) {
    swapped_ = false;
  } else if (byteswap32(magic) == kMagicMicros || byteswap32(magic) == kMagicNanos) {
    swapped_ = true;
    magic = byteswap32(magic);
  } else {
    throw FormatError("pcap: bad magic number (pcapng is not supported)");
  }
  nanos_ = magic == kMagicNanos;
  std::uint32_t network = read_u32(20) & 0x0fffffff;
  if (network == 1) {
    link_type_ = LinkType::kEthernet;
  } else if (network == 101) {
    link_type_ = LinkType::kRaw;
  } else {
    throw FormatError("pcap: unsupported link type " + std::to_string(network));
  }
  cursor_ = kGlobalHeaderSize;
}

bool PcapReader::next(PcapPacket& packet) {
  if (cursor_ >= bytes_.size()) return false;
  if (bytes_.size() - cursor_ < kRecordHeaderSize) {
    ++truncated_;
    cursor_ = bytes_.size();
    return false;
  }
  std::uint32_t sec = read_u32(cursor_);
  std::uint32_t frac = read_u32(cursor_ + 4);
  std::uint32_t incl = read_u32(cursor_ + 8);
  std::uint32_t orig = read_u32(cursor_ + 12);
  std::size_t body = cursor_ + kRecordHeaderSize;
  if (incl > kMaxRecordSize || bytes_.size() - body < incl) {
    ++truncated_;
    cursor_ = bytes_.size();
    return false;
  }
  packet.timestamp = static_cast<double>(sec) + static_cast<double>(frac) / (nanos_ ? 1e9 : 1e6);
  packet.data = std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(bytes_.data()) + body, incl);
  packet.original_length = orig;
  cursor_ = body + incl;
  return true;
}

DecodeStatus decode_tcp(LinkType link, std::span<const std::uint8_t> frame, TcpSegment& out) {
  if (link == LinkType::kRaw) return decode_ip(frame, out);

  if (frame.size() < 14) return DecodeStatus::kMalformed;
  std::size_t offset = 12;
  std::uint16_t ethertype = be16(frame.data() + offset);
  // 802.1Q / QinQ tags
  while (ethertype == 0x8100 || ethertype == 0x88a8) {
    offset += 4;
    if (frame.size() < offset + 2) return DecodeStatus::kMalformed;
    ethertype = be16(frame.data() + offset);
  }
  offset += 2;
  if (ethertype != 0x0800 && ethertype != 0x86dd) return DecodeStatus::kNotTcp;
  return decode_ip(frame.subspan(offset), out);
}

}  // namespace appscope
