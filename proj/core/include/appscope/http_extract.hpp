#pragma once

#include <cstddef>
#include <vector>

#include "appscope/http_request.hpp"
#include "appscope/tcp_stream.hpp"

namespace appscope {

/// Pulls HTTP/1.x requests out of a client-to-server byte stream.
///
/// Handles pipelining and Content-Length bodies. Anything that does not start
/// with a request line (TLS records, chunked bodies, garbage) is skipped by
/// scanning forward to the next line that begins with a known method.
class HttpRequestExtractor {
 public:
  HttpRequestExtractor(Endpoint client, Endpoint server)
      : client_(std::move(client)), server_(std::move(server)) {}

  /// Consumes whatever complete requests `stream` holds and appends them.
  void drain(TcpStream& stream, std::vector<HttpRequest>& out);

  [[nodiscard]] std::size_t rejected_requests() const { return rejected_; }

 private:
  Endpoint client_;
  Endpoint server_;
  std::size_t body_remaining_ = 0;
  std::size_t rejected_ = 0;
};

}  // namespace appscope
