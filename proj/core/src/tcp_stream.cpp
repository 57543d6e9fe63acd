#include "appscope/tcp_stream.hpp"

namespace appscope {

void TcpStream::on_segment(std::uint32_t seq, bool syn, std::span<const std::uint8_t> payload,
                           double timestamp) {
  if (syn) {
    if (!initialized_ || next_offset_ == 0) {
      isn_ = seq + 1;
      initialized_ = true;
    }
    return;
  }
  if (payload.empty()) return;
  if (!initialized_) {
    isn_ = seq;
    initialized_ = true;
  }
  // Unwrap the 32-bit sequence number around the expected position.
  auto expected = static_cast<std::uint32_t>(isn_ + next_offset_);
  auto delta = static_cast<std::int32_t>(seq - expected);
  if (delta < 0 && static_cast<std::uint64_t>(-static_cast<std::int64_t>(delta)) > next_offset_) {
    ++retransmissions_;
    return;
  }
  std::uint64_t offset = next_offset_ + delta;
  std::string_view bytes(reinterpret_cast<const char*>(payload.data()), payload.size());

  if (offset + bytes.size() <= next_offset_) {
    ++retransmissions_;
    return;
  }
  if (offset <= next_offset_) {
    append(offset, bytes, timestamp);
    drain_pending();
    return;
  }
  auto it = pending_.find(offset);
  if (it != pending_.end()) {
    if (it->second.first.size() < bytes.size()) it->second = {std::string(bytes), timestamp};
    return;
  }
  if (pending_.size() >= reorder_limit_) {
    ++dropped_;
    pending_.clear();
    data_.clear();
    chunks_.clear();
    next_offset_ = offset;
    data_offset_ = offset;
    append(offset, bytes, timestamp);
    return;
  }
  pending_.emplace(offset, std::make_pair(std::string(bytes), timestamp));
}

void TcpStream::append(std::uint64_t offset, std::string_view bytes, double timestamp) {
  std::size_t skip = static_cast<std::size_t>(next_offset_ - offset);
  if (skip > 0) ++retransmissions_;
  bytes.remove_prefix(skip);
  if (data_.empty()) data_offset_ = next_offset_;
  chunks_.push_back({next_offset_, timestamp});
  data_.append(bytes);
  next_offset_ += bytes.size();
}

void TcpStream::drain_pending() {
  while (!pending_.empty()) {
    auto it = pending_.begin();
    if (it->first > next_offset_) break;
    auto [bytes, ts] = std::move(it->second);
    std::uint64_t offset = it->first;
    pending_.erase(it);
    if (offset + bytes.size() <= next_offset_) {
      ++retransmissions_;
      continue;
    }
    append(offset, bytes, ts);
  }
}

double TcpStream::timestamp_at(std::uint64_t offset) const {
  double ts = chunks_.empty() ? 0.0 : chunks_.front().timestamp;
  for (const auto& c : chunks_) {
    if (c.offset > offset) break;
    ts = c.timestamp;
  }
  return ts;
}

void TcpStream::consume(std::size_t n) {
  if (n > data_.size()) n = data_.size();
  data_.erase(0, n);
  data_offset_ += n;
  // Keep the chunk covering data_offset_.
  while (chunks_.size() > 1 && chunks_[1].offset <= data_offset_) chunks_.pop_front();
}

}  // namespace appscope
