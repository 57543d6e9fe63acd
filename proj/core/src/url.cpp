#include "appscope/url.hpp"

#include <algorithm>
#include <charconv>

#include "appscope/errors.hpp"

namespace appscope {

namespace {

bool iequals_prefix(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

bool is_ipv4(std::string_view host) {
  int parts = 0;
  std::size_t pos = 0;
  while (pos <= host.size()) {
    auto dot = host.find('.', pos);
    auto part = host.substr(pos, dot == std::string_view::npos ? host.npos : dot - pos);
    if (part.empty() || part.size() > 3) return false;
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || value > 255) return false;
    ++parts;
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return parts == 4;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

bool is_ip_literal(std::string_view host) {
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') return true;
  return is_ipv4(host);
}

std::string make_full_url(std::string_view host, std::uint16_t port,
                          std::string_view path_and_query) {
  std::string out = "http://";
  out.append(host);
  if (port != 80) {
    out.push_back(':');
    out.append(std::to_string(port));
  }
  if (path_and_query.empty() || path_and_query.front() != '/') out.push_back('/');
  out.append(path_and_query);
  return out;
}

std::string ParsedUrl::to_string() const { return make_full_url(host, port, path_and_query); }

ParsedUrl parse_http_url(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (!iequals_prefix(url, kScheme)) {
    throw PreconditionError("not an http:// URL: " + std::string(url));
  }
  if (std::any_of(url.begin(), url.end(),
                  [](unsigned char c) { return c <= 0x20 || c == 0x7f; })) {
    throw FormatError("URL contains whitespace or control bytes: " + std::string(url));
  }
  std::string_view rest = url.substr(kScheme.size());
  auto auth_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, auth_end);
  std::string_view tail = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);

  ParsedUrl out;
  std::string_view host = authority;
  std::string_view port_text;
  if (!authority.empty() && authority.front() == '[') {
    auto close = authority.find(']');
    if (close == std::string_view::npos) throw FormatError("unterminated IPv6 literal: " + std::string(url));
    host = authority.substr(0, close + 1);
    auto after = authority.substr(close + 1);
    if (!after.empty()) {
      if (after.front() != ':') throw FormatError("garbage after IPv6 literal: " + std::string(url));
      port_text = after.substr(1);
    }
  } else if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    port_text = authority.substr(colon + 1);
  }
  if (host.empty()) throw FormatError("URL has an empty host: " + std::string(url));
  if (!port_text.empty()) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), value);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || value == 0 || value > 65535) {
      throw FormatError("bad port in URL: " + std::string(url));
    }
    out.port = static_cast<std::uint16_t>(value);
  }
  out.host = to_lower_ascii(host);
  out.ip_literal = is_ip_literal(out.host);

  if (auto hash = tail.find('#'); hash != std::string_view::npos) tail = tail.substr(0, hash);
  if (tail.empty()) {
    out.path_and_query = "/";
  } else if (tail.front() == '?') {
    out.path_and_query = "/" + std::string(tail);
  } else {
    out.path_and_query = std::string(tail);
  }
  return out;
}

Fqdn extract_fqdn(std::string_view url) {
  auto parsed = parse_http_url(url);
  return Fqdn{std::move(parsed.host), parsed.ip_literal};
}

}  // namespace appscope
