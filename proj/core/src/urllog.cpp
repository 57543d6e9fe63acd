#include <charconv>
#include <ostream>

#include "appscope/errors.hpp"
#include "appscope/hash.hpp"
#include "appscope/trace_ingest.hpp"
#include "appscope/url.hpp"

namespace appscope {

namespace {

bool parse_line(std::string_view line, HttpRequest& out) {
  auto sp1 = line.find(' ');
  if (sp1 == std::string_view::npos) return false;
  auto sp2 = line.find(' ', sp1 + 1);
  if (sp2 == std::string_view::npos) return false;
  std::string_view ts_text = line.substr(0, sp1);
  std::string_view method = line.substr(sp1 + 1, sp2 - sp1 - 1);
  std::string_view url = line.substr(sp2 + 1);
  if (method.empty() || url.empty()) return false;

  double ts = 0;
  auto [p, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(), ts);
  if (ec != std::errc{} || p != ts_text.data() + ts_text.size()) return false;

  try {
    auto parsed = parse_http_url(url);
    out = make_request(ts, std::string(method), std::move(parsed.host), parsed.port,
                       std::move(parsed.path_and_query));
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace

std::vector<HttpRequest> parse_urllog_text(std::string_view text, IngestStats* stats) {
  std::vector<HttpRequest> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    HttpRequest r;
    if (parse_line(line, r)) {
      out.push_back(std::move(r));
    } else if (stats) {
      ++stats->malformed_lines;
    }
  }
  return out;
}

std::vector<HttpRequest> parse_urllog(const std::filesystem::path& path, IngestStats* stats) {
  return parse_urllog_text(read_file(path), stats);
}

void write_urllog(std::ostream& out, std::span<const HttpRequest> requests) {
  char buf[64];
  for (const auto& r : requests) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, r.timestamp);
    out.write(buf, end - buf);
    out << ' ' << r.method << ' ' << r.full_url << '\n';
  }
}

}  // namespace appscope
