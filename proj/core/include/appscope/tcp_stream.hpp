#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <string>

namespace appscope {

/// One direction of a TCP connection, reassembled into contiguous bytes.
///
/// In-order segments are appended directly and retransmissions of bytes
/// already seen are dropped. Segments arriving ahead of a gap wait in a
/// bounded reorder buffer; when it overflows the unconsumed bytes are thrown
/// away, dropped_requests() is bumped, and the stream restarts at the
/// overflowing segment.
class TcpStream {
 public:
  explicit TcpStream(std::size_t reorder_limit = 64) : reorder_limit_(reorder_limit) {}

  void on_segment(std::uint32_t seq, bool syn, std::span<const std::uint8_t> payload,
                  double timestamp);

  /// Contiguous bytes not yet consumed.
  [[nodiscard]] const std::string& data() const { return data_; }
  /// Stream offset of data()[0].
  [[nodiscard]] std::uint64_t data_offset() const { return data_offset_; }
  /// Capture time of the segment that carried stream byte `offset`.
  [[nodiscard]] double timestamp_at(std::uint64_t offset) const;
  /// Drops the first n unconsumed bytes.
  void consume(std::size_t n);

  [[nodiscard]] std::size_t retransmissions() const { return retransmissions_; }
  [[nodiscard]] std::size_t dropped_requests() const { return dropped_; }
  [[nodiscard]] std::size_t pending_segments() const { return pending_.size(); }

 private:
  struct Chunk {
    std::uint64_t offset;
    double timestamp;
  };

  void append(std::uint64_t offset, std::string_view bytes, double timestamp);
  void drain_pending();

  std::size_t reorder_limit_;
  bool initialized_ = false;
  std::uint32_t isn_ = 0;          // sequence number of stream offset 0
  std::uint64_t next_offset_ = 0;  // first stream offset not yet received
  std::string data_;
  std::uint64_t data_offset_ = 0;
  std::deque<Chunk> chunks_;
  std::map<std::uint64_t, std::pair<std::string, double>> pending_;
  std::size_t retransmissions_ = 0;
  std::size_t dropped_ = 0;
};

}  // namespace appscope
