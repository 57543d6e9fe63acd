#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace appscope {

/// Components of a normalized http:// URL.
///
/// Normalization: scheme fixed to "http", host lowercased, userinfo and
/// fragment dropped, default port 80 elided, path kept byte-exact. An empty
/// path becomes "/".
struct ParsedUrl {
  std::string host;
  std::uint16_t port = 80;
  std::string path_and_query;
  bool ip_literal = false;

  /// "http://" + host [+ ":" port] + path_and_query
  [[nodiscard]] std::string to_string() const;
};

/// Parses an absolute http URL. Throws PreconditionError for any scheme other
/// than http and FormatError for a missing host, bad port or whitespace.
ParsedUrl parse_http_url(std::string_view url);

/// Builds the canonical URL string from its pieces.
std::string make_full_url(std::string_view host, std::uint16_t port,
                          std::string_view path_and_query);

struct Fqdn {
  std::string name;
  bool ip_literal = false;
};

/// Hostname of an http URL, lowercased with port and userinfo stripped.
Fqdn extract_fqdn(std::string_view url);

/// Dotted-quad IPv4 or bracketed IPv6 literal.
bool is_ip_literal(std::string_view host);

std::string to_lower_ascii(std::string_view s);

}  // namespace appscope
