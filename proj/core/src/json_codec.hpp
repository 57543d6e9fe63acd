#pragma once

// nlohmann::json conversions shared by the cache, wire format and report
// serializers. Private to the core library.

#include "appscope/reputation.hpp"
#include "json.hpp"

namespace appscope::detail {

using nlohmann::json;

inline json to_json(const UrlReport& r) {
  json verdicts = json::object();
  for (const auto& [engine, flagged] : r.engine_verdicts) verdicts[engine] = flagged;
  return json{{"url", r.url},
              {"engine_verdicts", verdicts},
              {"positives", r.positives},
              {"total_engines", r.total_engines},
              {"retrieved_at", r.retrieved_at},
              {"status", std::string(to_string(r.status))}};
}

inline UrlReport url_report_from_json(const json& j) {
  UrlReport r;
  r.url = j.at("url").get<std::string>();
  for (const auto& [engine, flagged] : j.at("engine_verdicts").items()) {
    r.engine_verdicts[engine] = flagged.get<bool>();
  }
  r.positives = j.at("positives").get<int>();
  r.total_engines = j.at("total_engines").get<int>();
  r.retrieved_at = j.at("retrieved_at").get<double>();
  r.status = report_status_from_string(j.at("status").get<std::string>());
  return r;
}

inline json to_json(const DomainReport& r) {
  json categories = json::object();
  for (const auto& [fqdn, label] : r.categories) categories[fqdn] = label;
  return json{{"registrable_domain", r.registrable_domain},
              {"categories", categories},
              {"safety_verdict", std::string(to_string(r.safety_verdict))},
              {"retrieved_at", r.retrieved_at},
              {"status", std::string(to_string(r.status))}};
}

inline DomainReport domain_report_from_json(const json& j) {
  DomainReport r;
  r.registrable_domain = j.at("registrable_domain").get<std::string>();
  for (const auto& [fqdn, label] : j.at("categories").items()) {
    r.categories[fqdn] = label.get<std::string>();
  }
  r.safety_verdict = safety_verdict_from_string(j.at("safety_verdict").get<std::string>());
  r.retrieved_at = j.at("retrieved_at").get<double>();
  r.status = report_status_from_string(j.at("status").get<std::string>());
  return r;
}

}  // namespace appscope::detail
