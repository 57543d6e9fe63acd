#include <algorithm>

#include "appscope/report.hpp"

namespace appscope {

namespace {

std::vector<ClassDomainRow> class_domain_table(const std::vector<AppProfile>& apps, UrlClass wanted) {
  std::map<std::string, std::size_t> per_domain;
  std::size_t total = 0;
  for (const auto& app : apps) {
    for (const auto& [url, c] : app.classifications) {
      if (c.url_class != wanted) continue;
      ++per_domain[c.registrable_domain];
      ++total;
    }
  }
  std::vector<ClassDomainRow> rows;
  for (const auto& [domain, n] : per_domain) {
    rows.push_back({domain, n, 100.0 * static_cast<double>(n) / static_cast<double>(total)});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ClassDomainRow& a, const ClassDomainRow& b) { return a.urls > b.urls; });
  return rows;
}

}  // namespace

ReportBundle aggregate(std::vector<AppProfile> apps, std::map<std::string, DomainInfo> domains,
                       Provenance provenance) {
  ReportBundle b;
  b.apps = std::move(apps);
  b.domains = std::move(domains);
  b.provenance = std::move(provenance);

  std::vector<AppProfile> analyzed;
  for (const auto& app : b.apps) {
    if (app.status == AppStatus::kOk) analyzed.push_back(app);
  }

  // Corpus counts.
  auto& c = b.counts;
  c.apps = b.apps.size();
  c.failed_apps = b.apps.size() - analyzed.size();
  std::map<std::string, const UrlReport*> url_reports;
  std::set<std::string> all_domains;
  for (const auto& app : analyzed) {
    if (app.requests_after_baseline > 0) ++c.active_apps;
    c.requests_before_baseline += app.requests_before_baseline;
    c.requests_after_baseline += app.requests_after_baseline;
    c.app_url_pairs += app.urls.size();
    for (const auto& url : app.urls) {
      auto it = app.reports.find(url);
      auto& slot = url_reports[url];
      if (it != app.reports.end() && !slot) slot = &it->second;
    }
    for (auto& d : app.registrable_domains()) all_domains.insert(std::move(d));
  }
  c.distinct_urls = url_reports.size();
  c.distinct_domains = all_domains.size();
  std::map<int, std::size_t> positives_counts;
  std::size_t scanned = 0;
  for (const auto& [url, report] : url_reports) {
    if (!report || report->status == ReportStatus::kUnknown) {
      ++c.urls_unknown;
    } else if (report->status == ReportStatus::kUnavailable) {
      ++c.urls_unavailable;
    } else {
      ++c.urls_with_reports;
      if (report->total_engines > 0) {
        ++positives_counts[report->positives];
        ++scanned;
      }
    }
  }
  for (const auto& [p, n] : positives_counts) {
    b.url_positives_histogram[p] = static_cast<double>(n) / static_cast<double>(scanned);
  }

  // Rankings.
  for (const auto& axis_name : b.provenance.axes) {
    b.top[axis_name] = rank_apps(analyzed, rank_axis_from_string(axis_name), b.provenance.top_n);
  }

  // Domain popularity by fraction of analyzed apps.
  std::map<std::string, std::size_t> apps_per_domain;
  for (const auto& app : analyzed) {
    for (const auto& d : app.registrable_domains()) ++apps_per_domain[d];
  }
  for (const auto& [domain, n] : apps_per_domain) {
    b.domain_popularity.push_back(
        {domain, n, static_cast<double>(n) / static_cast<double>(analyzed.size())});
  }
  std::stable_sort(b.domain_popularity.begin(), b.domain_popularity.end(),
                   [](const DomainPopularityRow& x, const DomainPopularityRow& y) { return x.apps > y.apps; });

  b.ad_domains = class_domain_table(analyzed, UrlClass::kAd);
  b.tracker_domains = class_domain_table(analyzed, UrlClass::kTracker);

  // Domain categories, safety and maliciousness.
  std::map<std::string, std::string> domain_category;
  std::map<std::string, std::size_t> category_counts;
  std::map<std::string, std::pair<std::size_t, std::size_t>> malicious;  // category -> (malicious, rated)
  std::vector<DomainReport> rated;
  for (const auto& domain : all_domains) {
    auto it = b.domains.find(domain);
    std::string category = it == b.domains.end() ? std::string(kUncategorized) : it->second.category;
    domain_category[domain] = category;
    ++category_counts[category];
    if (it != b.domains.end() && it->second.status == ReportStatus::kOk && it->second.safety_verdict) {
      DomainReport r;
      r.registrable_domain = domain;
      r.safety_verdict = *it->second.safety_verdict;
      rated.push_back(std::move(r));
      auto& [bad, total] = malicious[category];
      ++total;
      if (*it->second.safety_verdict == SafetyVerdict::kMalicious) ++bad;
    }
  }
  for (const auto& [category, n] : category_counts) {
    b.domain_categories.push_back(
        {category, n, 100.0 * static_cast<double>(n) / static_cast<double>(all_domains.size())});
  }
  std::stable_sort(b.domain_categories.begin(), b.domain_categories.end(),
                   [](const CategoryPopularityRow& x, const CategoryPopularityRow& y) {
                     return x.domains > y.domains;
                   });
  if (!rated.empty()) {
    for (const auto& [verdict, fraction] : domain_safety_histogram(rated)) {
      b.safety_histogram[std::string(to_string(verdict))] = fraction;
    }
  }
  for (const auto& [category, counts] : malicious) {
    b.malicious_by_category.push_back(
        {category, counts.first, counts.second,
         100.0 * static_cast<double>(counts.first) / static_cast<double>(counts.second)});
  }
  std::stable_sort(b.malicious_by_category.begin(), b.malicious_by_category.end(),
                   [](const MaliciousFractionRow& x, const MaliciousFractionRow& y) {
                     return x.percent > y.percent;
                   });

  b.category_matrix = category_matrix(analyzed, domain_category);

  // Per-app distributions.
  std::map<std::string, std::vector<std::uint64_t>> metrics;
  std::map<std::string, std::vector<std::uint64_t>> urls_by_category;
  for (const auto& app : analyzed) {
    metrics["urls"].push_back(app.counts.distinct_urls);
    metrics["domains"].push_back(app.counts.distinct_domains);
    metrics["ad_urls"].push_back(app.counts.ad_urls);
    metrics["tracker_urls"].push_back(app.counts.tracker_urls);
    urls_by_category[app.metadata.category].push_back(app.counts.distinct_urls);
  }
  for (const auto& [metric, values] : metrics) b.cdfs[metric] = empirical_cdf(values);
  for (const auto& [category, values] : urls_by_category) {
    b.urls_by_app_category[category] = distribution_summary(values);
  }
  return b;
}

}  // namespace appscope
