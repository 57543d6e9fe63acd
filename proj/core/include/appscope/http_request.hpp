#pragma once

#include <cstdint>
#include <string>

namespace appscope {

/// IP:port pair as seen on the wire. The default value is the "unknown"
/// sentinel used for requests that did not come from a packet capture.
struct Endpoint {
  std::string address;
  std::uint16_t port = 0;

  [[nodiscard]] bool is_unknown() const { return address.empty(); }
  /// "10.0.0.1:80", "[::1]:80", or "unknown".
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// One reconstructed HTTP request.
struct HttpRequest {
  double timestamp = 0.0;  // seconds since epoch
  Endpoint src;
  Endpoint dst;
  std::string method;
  std::string host;  // lowercase, never empty, no port
  std::uint16_t port = 80;
  std::string path_and_query;
  std::string full_url;

  friend bool operator==(const HttpRequest&, const HttpRequest&) = default;
};

/// Builds a request and derives full_url from host, port and path.
HttpRequest make_request(double timestamp, std::string method, std::string host,
                         std::uint16_t port, std::string path_and_query,
                         Endpoint src = {}, Endpoint dst = {});

}  // namespace appscope
