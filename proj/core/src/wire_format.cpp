#include "appscope/wire_format.hpp"

#include "appscope/errors.hpp"
#include "json_codec.hpp"

namespace appscope {

namespace {

using nlohmann::json;

json parse_body(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("reputation response is not JSON: ") + e.what());
  }
}

std::vector<json> as_items(const json& doc) {
  if (doc.is_array()) return {doc.begin(), doc.end()};
  if (doc.is_object()) return {doc};
  throw ProtocolError("reputation response must be an object or an array");
}

std::string resource_of(const json& item, const char* alt_key) {
  if (auto it = item.find("resource"); it != item.end() && it->is_string()) return it->get<std::string>();
  if (auto it = item.find(alt_key); it != item.end() && it->is_string()) return it->get<std::string>();
  throw ProtocolError("reputation item without a resource field");
}

bool is_known(const json& item) {
  auto it = item.find("response_code");
  return it == item.end() || (it->is_number_integer() && it->get<int>() != 0);
}

double retrieved_at(const json& item, double fallback) {
  auto it = item.find("retrieved_at");
  return it != item.end() && it->is_number() ? it->get<double>() : fallback;
}

}  // namespace

std::vector<UrlReport> parse_url_reports(std::string_view body, double default_retrieved_at) {
  std::vector<UrlReport> out;
  for (const auto& item : as_items(parse_body(body))) {
    if (!item.is_object()) throw ProtocolError("reputation item is not an object");
    std::string url = resource_of(item, "url");
    if (!is_known(item)) {
      out.push_back(unknown_url_report(std::move(url)));
      continue;
    }
    UrlReport r;
    r.url = std::move(url);
    try {
      r.positives = item.at("positives").get<int>();
      r.total_engines = item.at("total").get<int>();
      for (const auto& [engine, verdict] : item.at("scans").items()) {
        r.engine_verdicts[engine] = verdict.at("detected").get<bool>();
      }
    } catch (const json::exception& e) {
      throw ProtocolError("malformed URL report for " + r.url + ": " + e.what());
    }
    int flagged = 0;
    for (const auto& [engine, detected] : r.engine_verdicts) flagged += detected ? 1 : 0;
    if (r.positives != flagged || r.total_engines != static_cast<int>(r.engine_verdicts.size()) ||
        r.positives < 0 || r.positives > r.total_engines) {
      throw ProtocolError("inconsistent positives/total/scans for " + r.url);
    }
    r.retrieved_at = retrieved_at(item, default_retrieved_at);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DomainReport> parse_domain_reports(std::string_view body, double default_retrieved_at) {
  std::vector<DomainReport> out;
  for (const auto& item : as_items(parse_body(body))) {
    if (!item.is_object()) throw ProtocolError("reputation item is not an object");
    std::string domain = resource_of(item, "domain");
    if (!is_known(item)) {
      out.push_back(unknown_domain_report(std::move(domain)));
      continue;
    }
    DomainReport r;
    r.registrable_domain = std::move(domain);
    try {
      if (auto it = item.find("categories"); it != item.end() && !it->is_null()) {
        for (const auto& [fqdn, label] : it->items()) r.categories[fqdn] = label.get<std::string>();
      }
      r.safety_verdict = safety_verdict_from_string(item.at("webutation_verdict").get<std::string>());
    } catch (const json::exception& e) {
      throw ProtocolError("malformed domain report for " + r.registrable_domain + ": " + e.what());
    } catch (const FormatError& e) {
      throw ProtocolError("malformed domain report for " + r.registrable_domain + ": " + e.what());
    }
    r.retrieved_at = retrieved_at(item, default_retrieved_at);
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_wire(const UrlReport& report) {
  json j{{"resource", report.url}};
  if (report.status != ReportStatus::kOk) {
    j["response_code"] = 0;
    return j.dump(2) + "\n";
  }
  json scans = json::object();
  for (const auto& [engine, flagged] : report.engine_verdicts) scans[engine] = {{"detected", flagged}};
  j["response_code"] = 1;
  j["positives"] = report.positives;
  j["total"] = report.total_engines;
  j["scans"] = scans;
  j["retrieved_at"] = report.retrieved_at;
  return j.dump(2) + "\n";
}

std::string to_wire(const DomainReport& report) {
  json j{{"resource", report.registrable_domain}};
  if (report.status != ReportStatus::kOk) {
    j["response_code"] = 0;
    return j.dump(2) + "\n";
  }
  json categories = json::object();
  for (const auto& [fqdn, label] : report.categories) categories[fqdn] = label;
  j["response_code"] = 1;
  j["categories"] = categories;
  j["webutation_verdict"] = std::string(to_string(report.safety_verdict));
  j["retrieved_at"] = report.retrieved_at;
  return j.dump(2) + "\n";
}

}  // namespace appscope
