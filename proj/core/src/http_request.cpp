#include "appscope/http_request.hpp"

#include "appscope/url.hpp"

namespace appscope {

std::string Endpoint::to_string() const {
  if (is_unknown()) return "unknown";
  if (address.find(':') != std::string::npos) return "[" + address + "]:" + std::to_string(port);
  return address + ":" + std::to_string(port);
}

HttpRequest make_request(double timestamp, std::string method, std::string host,
                         std::uint16_t port, std::string path_and_query, Endpoint src,
                         Endpoint dst) {
  HttpRequest r;
  r.timestamp = timestamp;
  r.src = std::move(src);
  r.dst = std::move(dst);
  r.method = std::move(method);
  r.host = to_lower_ascii(host);
  r.port = port;
  r.path_and_query = path_and_query.empty() ? std::string("/") : std::move(path_and_query);
  r.full_url = make_full_url(r.host, r.port, r.path_and_query);
  return r;
}

}  // namespace appscope
