#include "appscope/errors.hpp"
#include "appscope/report.hpp"
#include "json_codec.hpp"

namespace appscope {

namespace {

using detail::json;

json opt_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const AppMetadata& m) {
  return json{{"name", m.name},
              {"category", m.category},
              {"rating", m.rating ? json(*m.rating) : json(nullptr)},
              {"downloads", m.downloads ? json(*m.downloads) : json(nullptr)},
              {"top_developer", m.top_developer}};
}

AppMetadata metadata_from_json(const json& j) {
  AppMetadata m;
  m.name = j.at("name").get<std::string>();
  m.category = j.at("category").get<std::string>();
  if (!j.at("rating").is_null()) m.rating = j["rating"].get<double>();
  if (!j.at("downloads").is_null()) m.downloads = j["downloads"].get<std::uint64_t>();
  m.top_developer = j.at("top_developer").get<bool>();
  return m;
}

json to_json(const AppProfile& p) {
  json urls = json::array();
  for (const auto& url : p.urls) {
    json entry{{"url", url}};
    auto req = p.url_requests.find(url);
    entry["requests"] = req == p.url_requests.end() ? 0 : req->second;
    if (auto c = p.classifications.find(url); c != p.classifications.end()) {
      entry["class"] = std::string(to_string(c->second.url_class));
      entry["matched_rule"] = opt_json(c->second.matched_rule);
      entry["fqdn"] = c->second.fqdn;
      entry["registrable_domain"] = c->second.registrable_domain;
      entry["ip_literal"] = c->second.ip_literal;
    }
    auto r = p.reports.find(url);
    entry["report"] = r == p.reports.end() ? json(nullptr) : detail::to_json(r->second);
    urls.push_back(std::move(entry));
  }
  return json{{"app_id", p.app_id},
              {"metadata", to_json(p.metadata)},
              {"status", p.status == AppStatus::kOk ? "ok" : "failed"},
              {"failure", p.failure},
              {"requests_before_baseline", p.requests_before_baseline},
              {"requests_after_baseline", p.requests_after_baseline},
              {"urls", urls},
              {"counts",
               {{"distinct_urls", p.counts.distinct_urls},
                {"distinct_domains", p.counts.distinct_domains},
                {"ad_urls", p.counts.ad_urls},
                {"tracker_urls", p.counts.tracker_urls}}},
              {"suspicion_score", p.suspicion_score}};
}

AppProfile profile_from_json(const json& j) {
  AppProfile p;
  p.app_id = j.at("app_id").get<std::string>();
  p.metadata = metadata_from_json(j.at("metadata"));
  p.status = j.at("status").get<std::string>() == "ok" ? AppStatus::kOk : AppStatus::kFailed;
  p.failure = j.at("failure").get<std::string>();
  p.requests_before_baseline = j.at("requests_before_baseline").get<std::size_t>();
  p.requests_after_baseline = j.at("requests_after_baseline").get<std::size_t>();
  for (const auto& entry : j.at("urls")) {
    auto url = entry.at("url").get<std::string>();
    p.urls.insert(url);
    p.url_requests[url] = entry.at("requests").get<std::size_t>();
    if (entry.contains("class")) {
      UrlClassification c;
      c.url = url;
      c.url_class = url_class_from_string(entry["class"].get<std::string>());
      if (!entry.at("matched_rule").is_null()) c.matched_rule = entry["matched_rule"].get<std::string>();
      c.fqdn = entry.at("fqdn").get<std::string>();
      c.registrable_domain = entry.at("registrable_domain").get<std::string>();
      c.ip_literal = entry.at("ip_literal").get<bool>();
      p.classifications[url] = std::move(c);
    }
    if (!entry.at("report").is_null()) p.reports[url] = detail::url_report_from_json(entry["report"]);
  }
  const auto& counts = j.at("counts");
  p.counts.distinct_urls = counts.at("distinct_urls").get<std::size_t>();
  p.counts.distinct_domains = counts.at("distinct_domains").get<std::size_t>();
  p.counts.ad_urls = counts.at("ad_urls").get<std::size_t>();
  p.counts.tracker_urls = counts.at("tracker_urls").get<std::size_t>();
  p.suspicion_score = j.at("suspicion_score").get<double>();
  return p;
}

json to_json(const DomainInfo& d) {
  return json{{"domain", d.domain},
              {"category", d.category},
              {"fqdn_votes", d.fqdn_votes},
              {"fqdns", d.fqdns},
              {"status", std::string(to_string(d.status))},
              {"safety_verdict",
               d.safety_verdict ? json(std::string(to_string(*d.safety_verdict))) : json(nullptr)}};
}

DomainInfo domain_info_from_json(const json& j) {
  DomainInfo d;
  d.domain = j.at("domain").get<std::string>();
  d.category = j.at("category").get<std::string>();
  d.fqdn_votes = j.at("fqdn_votes").get<std::map<std::string, std::size_t>>();
  d.fqdns = j.at("fqdns").get<std::set<std::string>>();
  d.status = report_status_from_string(j.at("status").get<std::string>());
  if (!j.at("safety_verdict").is_null()) {
    d.safety_verdict = safety_verdict_from_string(j["safety_verdict"].get<std::string>());
  }
  return d;
}

json to_json(const DistributionSummary& s) {
  return json{{"min", s.min},
              {"q1", s.q1},
              {"median", s.median},
              {"q3", s.q3},
              {"max", s.max},
              {"lower_fence", s.lower_fence},
              {"upper_fence", s.upper_fence},
              {"whisker_low", s.whisker_low},
              {"whisker_high", s.whisker_high},
              {"outliers", s.outliers}};
}

DistributionSummary summary_from_json(const json& j) {
  DistributionSummary s;
  s.min = j.at("min").get<double>();
  s.q1 = j.at("q1").get<double>();
  s.median = j.at("median").get<double>();
  s.q3 = j.at("q3").get<double>();
  s.max = j.at("max").get<double>();
  s.lower_fence = j.at("lower_fence").get<double>();
  s.upper_fence = j.at("upper_fence").get<double>();
  s.whisker_low = j.at("whisker_low").get<double>();
  s.whisker_high = j.at("whisker_high").get<double>();
  s.outliers = j.at("outliers").get<std::vector<double>>();
  return s;
}

json to_json(const CorpusCounts& c) {
  return json{{"apps", c.apps},
              {"active_apps", c.active_apps},
              {"failed_apps", c.failed_apps},
              {"requests_before_baseline", c.requests_before_baseline},
              {"requests_after_baseline", c.requests_after_baseline},
              {"app_url_pairs", c.app_url_pairs},
              {"distinct_urls", c.distinct_urls},
              {"distinct_domains", c.distinct_domains},
              {"urls_with_reports", c.urls_with_reports},
              {"urls_unknown", c.urls_unknown},
              {"urls_unavailable", c.urls_unavailable}};
}

CorpusCounts counts_from_json(const json& j) {
  CorpusCounts c;
  c.apps = j.at("apps").get<std::size_t>();
  c.active_apps = j.at("active_apps").get<std::size_t>();
  c.failed_apps = j.at("failed_apps").get<std::size_t>();
  c.requests_before_baseline = j.at("requests_before_baseline").get<std::size_t>();
  c.requests_after_baseline = j.at("requests_after_baseline").get<std::size_t>();
  c.app_url_pairs = j.at("app_url_pairs").get<std::size_t>();
  c.distinct_urls = j.at("distinct_urls").get<std::size_t>();
  c.distinct_domains = j.at("distinct_domains").get<std::size_t>();
  c.urls_with_reports = j.at("urls_with_reports").get<std::size_t>();
  c.urls_unknown = j.at("urls_unknown").get<std::size_t>();
  c.urls_unavailable = j.at("urls_unavailable").get<std::size_t>();
  return c;
}

json to_json(const Provenance& p) {
  return json{{"tool_version", p.tool_version},
              {"ad_list_sha256", p.ad_list_sha256},
              {"tracker_list_sha256", p.tracker_list_sha256},
              {"suffix_list_sha256", p.suffix_list_sha256},
              {"reputation_provider", p.reputation_provider},
              {"config",
               {{"alpha", p.alpha},
                {"beta", p.beta},
                {"suspicious_threshold", p.suspicious_threshold},
                {"top_n", p.top_n},
                {"axes", p.axes},
                {"whitelist", p.whitelist}}},
              {"notes", p.notes}};
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  p.tool_version = j.at("tool_version").get<std::string>();
  p.ad_list_sha256 = j.at("ad_list_sha256").get<std::string>();
  p.tracker_list_sha256 = j.at("tracker_list_sha256").get<std::string>();
  p.suffix_list_sha256 = j.at("suffix_list_sha256").get<std::string>();
  p.reputation_provider = j.at("reputation_provider").get<std::string>();
  const auto& config = j.at("config");
  p.alpha = config.at("alpha").get<double>();
  p.beta = config.at("beta").get<double>();
  p.suspicious_threshold = config.at("suspicious_threshold").get<int>();
  p.top_n = config.at("top_n").get<std::size_t>();
  p.axes = config.at("axes").get<std::vector<std::string>>();
  p.whitelist = config.at("whitelist").get<std::map<std::string, std::string>>();
  p.notes = j.at("notes").get<std::map<std::string, std::string>>();
  return p;
}

template <typename Row, typename Fn>
json rows_to_json(const std::vector<Row>& rows, Fn fn) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(fn(r));
  return out;
}

json points_to_json(const std::vector<std::pair<double, double>>& points) {
  json out = json::array();
  for (const auto& [x, y] : points) out.push_back(json::array({x, y}));
  return out;
}

}  // namespace

std::string bundle_to_json(const ReportBundle& b) {
  json doc;
  doc["schema_version"] = 1;
  doc["apps"] = rows_to_json(b.apps, [](const AppProfile& p) { return to_json(p); });
  json domains = json::object();
  for (const auto& [name, info] : b.domains) domains[name] = to_json(info);
  doc["domains"] = domains;

  json tables;
  json top = json::object();
  for (const auto& [axis, rows] : b.top) {
    top[axis] = rows_to_json(rows, [](const RankedApp& r) {
      return json{{"app_id", r.app_id}, {"name", r.name}, {"value", r.value}};
    });
  }
  tables["top"] = top;
  tables["domain_popularity"] = rows_to_json(b.domain_popularity, [](const DomainPopularityRow& r) {
    return json{{"domain", r.domain}, {"apps", r.apps}, {"fraction", r.fraction}};
  });
  auto class_rows = [](const ClassDomainRow& r) {
    return json{{"domain", r.domain}, {"urls", r.urls}, {"percent", r.percent}};
  };
  tables["ad_domains"] = rows_to_json(b.ad_domains, class_rows);
  tables["tracker_domains"] = rows_to_json(b.tracker_domains, class_rows);
  tables["domain_categories"] = rows_to_json(b.domain_categories, [](const CategoryPopularityRow& r) {
    return json{{"category", r.category}, {"domains", r.domains}, {"percent", r.percent}};
  });
  tables["safety_histogram"] = b.safety_histogram;
  tables["malicious_by_category"] =
      rows_to_json(b.malicious_by_category, [](const MaliciousFractionRow& r) {
        return json{{"category", r.category},
                    {"malicious", r.malicious},
                    {"rated", r.rated},
                    {"percent", r.percent}};
      });
  json matrix = json::object();
  for (const auto& [row, cells] : b.category_matrix) matrix[row] = cells ? json(*cells) : json(nullptr);
  tables["category_matrix"] = matrix;
  json cdfs = json::object();
  for (const auto& [metric, points] : b.cdfs) cdfs[metric] = points_to_json(points);
  tables["cdfs"] = cdfs;
  json boxes = json::object();
  for (const auto& [category, s] : b.urls_by_app_category) boxes[category] = to_json(s);
  tables["urls_by_app_category"] = boxes;
  json positives = json::object();
  for (const auto& [p, fraction] : b.url_positives_histogram) positives[std::to_string(p)] = fraction;
  tables["url_positives_histogram"] = positives;
  tables["counts"] = to_json(b.counts);
  doc["tables"] = tables;
  doc["provenance"] = to_json(b.provenance);
  return doc.dump(2) + "\n";
}

ReportBundle bundle_from_json(std::string_view text) {
  ReportBundle b;
  try {
    auto doc = json::parse(text);
    if (doc.value("schema_version", 0) != 1) throw FormatError("report bundle: unsupported schema_version");
    for (const auto& app : doc.at("apps")) b.apps.push_back(profile_from_json(app));
    for (const auto& [name, info] : doc.at("domains").items()) b.domains[name] = domain_info_from_json(info);

    const auto& t = doc.at("tables");
    for (const auto& [axis, rows] : t.at("top").items()) {
      auto& out = b.top[axis];
      for (const auto& r : rows) {
        out.push_back({r.at("app_id").get<std::string>(), r.at("name").get<std::string>(),
                       r.at("value").get<double>()});
      }
    }
    for (const auto& r : t.at("domain_popularity")) {
      b.domain_popularity.push_back({r.at("domain").get<std::string>(), r.at("apps").get<std::size_t>(),
                                     r.at("fraction").get<double>()});
    }
    auto read_class = [](const json& rows, std::vector<ClassDomainRow>& out) {
      for (const auto& r : rows) {
        out.push_back({r.at("domain").get<std::string>(), r.at("urls").get<std::size_t>(),
                       r.at("percent").get<double>()});
      }
    };
    read_class(t.at("ad_domains"), b.ad_domains);
    read_class(t.at("tracker_domains"), b.tracker_domains);
    for (const auto& r : t.at("domain_categories")) {
      b.domain_categories.push_back({r.at("category").get<std::string>(),
                                     r.at("domains").get<std::size_t>(), r.at("percent").get<double>()});
    }
    b.safety_histogram = t.at("safety_histogram").get<std::map<std::string, double>>();
    for (const auto& r : t.at("malicious_by_category")) {
      b.malicious_by_category.push_back({r.at("category").get<std::string>(),
                                         r.at("malicious").get<std::size_t>(),
                                         r.at("rated").get<std::size_t>(), r.at("percent").get<double>()});
    }
    for (const auto& [row, cells] : t.at("category_matrix").items()) {
      if (cells.is_null()) {
        b.category_matrix[row] = std::nullopt;
      } else {
        b.category_matrix[row] = cells.get<std::map<std::string, double>>();
      }
    }
    for (const auto& [metric, points] : t.at("cdfs").items()) {
      auto& out = b.cdfs[metric];
      for (const auto& p : points) out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    for (const auto& [category, s] : t.at("urls_by_app_category").items()) {
      b.urls_by_app_category[category] = summary_from_json(s);
    }
    for (const auto& [p, fraction] : t.at("url_positives_histogram").items()) {
      b.url_positives_histogram[std::stoi(p)] = fraction.get<double>();
    }
    b.counts = counts_from_json(t.at("counts"));
    b.provenance = provenance_from_json(doc.at("provenance"));
  } catch (const json::exception& e) {
    throw FormatError(std::string("report bundle: ") + e.what());
  }
  return b;
}

}  // namespace appscope
