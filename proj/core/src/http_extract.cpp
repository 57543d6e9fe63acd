#include "appscope/http_extract.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <string_view>

#include "appscope/errors.hpp"
#include "appscope/url.hpp"

namespace appscope {

namespace {

constexpr std::array<std::string_view, 9> kMethods = {
    "GET ", "POST ", "HEAD ", "PUT ", "DELETE ", "OPTIONS ", "PATCH ", "TRACE ", "CONNECT "};

// Request heads larger than this are treated as garbage.
constexpr std::size_t kMaxHeadSize = 64 * 1024;

bool starts_with_method(std::string_view s) {
  return std::any_of(kMethods.begin(), kMethods.end(),
                     [&](std::string_view m) { return s.starts_with(m); });
}

/// True when `s` may still grow into a method token.
bool could_be_method_prefix(std::string_view s) {
  return std::any_of(kMethods.begin(), kMethods.end(),
                     [&](std::string_view m) { return m.starts_with(s); });
}

/// Offset of the first line that starts with a method, or npos.
std::size_t find_request_start(std::string_view data) {
  if (starts_with_method(data)) return 0;
  std::size_t pos = 0;
  while ((pos = data.find('\n', pos)) != std::string_view::npos) {
    ++pos;
    if (starts_with_method(data.substr(pos))) return pos;
  }
  return std::string_view::npos;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           auto lx = static_cast<unsigned char>(x), ly = static_cast<unsigned char>(y);
           return std::tolower(lx) == std::tolower(ly);
         });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Head {
  std::string_view method;
  std::string_view target;
  std::string_view host;
  std::size_t content_length = 0;
  bool chunked = false;
};

bool parse_head(std::string_view head, Head& out) {
  auto eol = head.find("\r\n");
  std::string_view line = head.substr(0, eol);
  auto sp1 = line.find(' ');
  auto sp2 = line.rfind(' ');
  if (sp1 == std::string_view::npos || sp2 == sp1) return false;
  out.method = line.substr(0, sp1);
  out.target = line.substr(sp1 + 1, sp2 - sp1 - 1);
  std::string_view version = line.substr(sp2 + 1);
  if (version != "HTTP/1.1" && version != "HTTP/1.0") return false;
  if (out.target.empty() || out.target.find(' ') != std::string_view::npos) return false;

  std::size_t pos = eol == std::string_view::npos ? head.size() : eol + 2;
  while (pos < head.size()) {
    auto next = head.find("\r\n", pos);
    std::string_view field = head.substr(pos, next == std::string_view::npos ? head.npos : next - pos);
    pos = next == std::string_view::npos ? head.size() : next + 2;
    auto colon = field.find(':');
    if (colon == std::string_view::npos) continue;
    auto name = trim(field.substr(0, colon));
    auto value = trim(field.substr(colon + 1));
    if (iequals(name, "host")) {
      out.host = value;
    } else if (iequals(name, "content-length")) {
      std::size_t n = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec == std::errc{} && p == value.data() + value.size()) out.content_length = n;
    } else if (iequals(name, "transfer-encoding")) {
      out.chunked = value.find("chunked") != std::string_view::npos;
    }
  }
  return true;
}

}  // namespace

void HttpRequestExtractor::drain(TcpStream& stream, std::vector<HttpRequest>& out) {
  while (true) {
    if (body_remaining_ > 0) {
      std::size_t n = std::min(body_remaining_, stream.data().size());
      stream.consume(n);
      body_remaining_ -= n;
      if (body_remaining_ > 0) return;
    }
    std::string_view data = stream.data();
    if (data.empty()) return;

    auto start = find_request_start(data);
    if (start == std::string_view::npos) {
      // Keep a possible partial method at the tail of the last line.
      auto last_nl = data.rfind('\n');
      std::string_view tail = last_nl == std::string_view::npos ? data : data.substr(last_nl + 1);
      if (last_nl == std::string_view::npos && could_be_method_prefix(tail)) return;
      std::size_t keep = (tail.size() < 8 && could_be_method_prefix(tail)) ? tail.size() : 0;
      stream.consume(data.size() - keep);
      return;
    }
    if (start > 0) {
      stream.consume(start);
      continue;
    }

    auto head_end = data.find("\r\n\r\n");
    if (head_end == std::string_view::npos) {
      if (data.size() > kMaxHeadSize) {
        ++rejected_;
        stream.consume(data.find('\n') + 1);
        continue;
      }
      return;
    }

    std::uint64_t request_offset = stream.data_offset();
    Head head;
    std::string_view head_text = data.substr(0, head_end + 2);
    if (!parse_head(head_text, head)) {
      ++rejected_;
      stream.consume(data.find('\n') + 1);
      continue;
    }
    std::size_t head_size = head_end + 4;
    double ts = stream.timestamp_at(request_offset);

    bool emitted = false;
    if (head.method != "CONNECT") {
      try {
        if (head.target.front() == '/') {
          if (!head.host.empty()) {
            auto url = parse_http_url("http://" + std::string(head.host) + std::string(head.target));
            out.push_back(make_request(ts, std::string(head.method), std::move(url.host), url.port,
                                       std::string(head.target), client_, server_));
            emitted = true;
          }
        } else if (head.target.size() > 7 && iequals(head.target.substr(0, 7), "http://")) {
          auto url = parse_http_url(head.target);
          out.push_back(make_request(ts, std::string(head.method), std::move(url.host), url.port,
                                     std::move(url.path_and_query), client_, server_));
          emitted = true;
        }
      } catch (const Error&) {
        emitted = false;
      }
    }
    if (!emitted) ++rejected_;

    stream.consume(head_size);
    body_remaining_ = head.chunked ? 0 : head.content_length;
  }
}

}  // namespace appscope
