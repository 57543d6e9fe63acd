#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace appscope {

/// Link-layer header types we can decode.
enum class LinkType : std::uint32_t { kEthernet = 1, kRaw = 101 };

struct PcapPacket {
  double timestamp = 0.0;
  std::span<const std::uint8_t> data;  // captured bytes, valid while the reader lives
  std::uint32_t original_length = 0;
};

/// Classic libpcap file reader (not pcapng). Accepts the microsecond and
/// nanosecond magics in either byte order. The whole file is held in memory.
class PcapReader {
 public:
  /// Throws IoError when unreadable, FormatError for a bad global header or
  /// an unsupported link type.
  explicit PcapReader(const std::filesystem::path& path);
  /// Parses an in-memory capture.
  explicit PcapReader(std::string bytes);

  [[nodiscard]] LinkType link_type() const { return link_type_; }
  [[nodiscard]] bool nanosecond_resolution() const { return nanos_; }

  /// Advances to the next record. Returns false at end of file. A truncated
  /// trailing record ends iteration and bumps truncated_records().
  bool next(PcapPacket& packet);

  [[nodiscard]] std::size_t truncated_records() const { return truncated_; }

 private:
  void parse_header();
  [[nodiscard]] std::uint32_t read_u32(std::size_t offset) const;

  std::string bytes_;
  std::size_t cursor_ = 0;
  bool swapped_ = false;
  bool nanos_ = false;
  LinkType link_type_ = LinkType::kEthernet;
  std::size_t truncated_ = 0;
};

/// TCP segment decoded from one captured frame.
struct TcpSegment {
  std::string src_addr;
  std::string dst_addr;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint32_t seq = 0;
  bool syn = false;
  bool fin = false;
  bool rst = false;
  std::span<const std::uint8_t> payload;
};

enum class DecodeStatus { kTcp, kNotTcp, kMalformed };

/// Strips link, IPv4/IPv6 and TCP headers. IP fragments report kNotTcp.
DecodeStatus decode_tcp(LinkType link, std::span<const std::uint8_t> frame, TcpSegment& out);

}  // namespace appscope
