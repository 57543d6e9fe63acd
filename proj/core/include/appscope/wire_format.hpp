#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "appscope/reputation.hpp"

namespace appscope {

// Reputation backend wire format, shared by the live HTTP backend and the
// fixture directory.
//
// URL report:    {"resource": url, "response_code": 1,
//                 "positives": int, "total": int,
//                 "scans": {engine: {"detected": bool}}, "retrieved_at": epoch}
// Domain report: {"resource": domain, "response_code": 1,
//                 "categories": {fqdn: label}, "webutation_verdict": str,
//                 "retrieved_at": epoch}
//
// response_code 0 means the provider does not know the resource. A response
// body is either one such object or an array of them. retrieved_at is
// optional; `default_retrieved_at` fills it in.

/// Throws ProtocolError on malformed JSON, missing fields, or a positives
/// count that disagrees with the scan table.
std::vector<UrlReport> parse_url_reports(std::string_view body, double default_retrieved_at);
std::vector<DomainReport> parse_domain_reports(std::string_view body, double default_retrieved_at);

std::string to_wire(const UrlReport& report);
std::string to_wire(const DomainReport& report);

}  // namespace appscope
