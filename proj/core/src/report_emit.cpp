#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "appscope/errors.hpp"
#include "appscope/hash.hpp"
#include "appscope/report.hpp"
#include "json_codec.hpp"

namespace appscope {

namespace {

using Row = std::vector<std::string>;

struct Table {
  std::string stem;
  std::string title;
  Row header;
  std::vector<Row> rows;
  std::vector<bool> numeric;  // right-align in text
};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0.000" || s == "-0.0") s.erase(0, 1);
  return s;
}

std::string fraction(double v) { return fixed(v, 3); }
std::string percent(double v) { return fixed(v, 1); }
std::string count(std::size_t v) { return std::to_string(v); }

std::string axis_cell(const std::string& axis, double v) {
  if (axis == "by_suspicion") return fixed(v, 3);
  return std::to_string(static_cast<long long>(v));
}

std::vector<Table> build_tables(const ReportBundle& b) {
  std::vector<Table> tables;

  {
    Table t{"counts", "Corpus counts", {"metric", "value"}, {}, {false, true}};
    const auto& c = b.counts;
    t.rows = {{"apps", count(c.apps)},
              {"active_apps", count(c.active_apps)},
              {"failed_apps", count(c.failed_apps)},
              {"requests_before_baseline", count(c.requests_before_baseline)},
              {"requests_after_baseline", count(c.requests_after_baseline)},
              {"app_url_pairs", count(c.app_url_pairs)},
              {"distinct_urls", count(c.distinct_urls)},
              {"distinct_domains", count(c.distinct_domains)},
              {"urls_with_reports", count(c.urls_with_reports)},
              {"urls_unknown", count(c.urls_unknown)},
              {"urls_unavailable", count(c.urls_unavailable)}};
    tables.push_back(std::move(t));
  }

  {
    Table t{"apps",
            "Applications",
            {"app_id", "name", "category", "status", "requests_before_baseline",
             "requests_after_baseline", "distinct_urls", "distinct_domains", "ad_urls", "tracker_urls",
             "suspicion_score"},
            {},
            {false, false, false, false, true, true, true, true, true, true, true}};
    for (const auto& p : b.apps) {
      t.rows.push_back({p.app_id, p.display_name(), p.metadata.category,
                        p.status == AppStatus::kOk ? "ok" : "failed", count(p.requests_before_baseline),
                        count(p.requests_after_baseline), count(p.counts.distinct_urls),
                        count(p.counts.distinct_domains), count(p.counts.ad_urls),
                        count(p.counts.tracker_urls), fixed(p.suspicion_score, 3)});
    }
    tables.push_back(std::move(t));
  }

  for (const auto& axis : b.provenance.axes) {
    auto it = b.top.find(axis);
    if (it == b.top.end()) continue;
    Table t{"top_" + axis.substr(3), "Top apps " + axis, {"rank", "app_id", "name", "value"}, {},
            {true, false, false, true}};
    std::size_t rank = 1;
    for (const auto& r : it->second) {
      t.rows.push_back({count(rank++), r.app_id, r.name, axis_cell(axis, r.value)});
    }
    tables.push_back(std::move(t));
  }

  {
    Table t{"domain_popularity", "Popular domains (fraction of apps)", {"domain", "apps", "fraction"}, {},
            {false, true, true}};
    for (const auto& r : b.domain_popularity) t.rows.push_back({r.domain, count(r.apps), fraction(r.fraction)});
    tables.push_back(std::move(t));
  }

  auto class_table = [](std::string stem, std::string title, const std::vector<ClassDomainRow>& rows) {
    Table t{std::move(stem), std::move(title), {"domain", "urls", "percent"}, {}, {false, true, true}};
    for (const auto& r : rows) t.rows.push_back({r.domain, count(r.urls), percent(r.percent)});
    return t;
  };
  tables.push_back(class_table("ad_domains", "Ad domains", b.ad_domains));
  tables.push_back(class_table("tracker_domains", "Tracker domains", b.tracker_domains));

  {
    Table t{"domain_categories", "Domain categories", {"category", "domains", "percent"}, {},
            {false, true, true}};
    for (const auto& r : b.domain_categories) {
      t.rows.push_back({r.category, count(r.domains), percent(r.percent)});
    }
    tables.push_back(std::move(t));
  }

  {
    Table t{"safety_histogram", "Domain safety verdicts", {"verdict", "fraction"}, {}, {false, true}};
    for (const auto& [verdict, f] : b.safety_histogram) t.rows.push_back({verdict, fraction(f)});
    tables.push_back(std::move(t));
  }

  {
    Table t{"malicious_by_category",
            "Malicious domains per category",
            {"category", "malicious", "rated", "percent"},
            {},
            {false, true, true, true}};
    for (const auto& r : b.malicious_by_category) {
      t.rows.push_back({r.category, count(r.malicious), count(r.rated), percent(r.percent)});
    }
    tables.push_back(std::move(t));
  }

  {
    std::set<std::string> columns;
    for (const auto& [row, cells] : b.category_matrix) {
      if (cells) {
        for (const auto& [col, v] : *cells) columns.insert(col);
      }
    }
    Table t{"category_matrix", "Domain categories by app category (percent)", {"app_category"}, {}, {false}};
    for (const auto& col : columns) {
      t.header.push_back(col);
      t.numeric.push_back(true);
    }
    for (const auto& [row, cells] : b.category_matrix) {
      Row r{row};
      for (const auto& col : columns) {
        if (!cells) {
          r.emplace_back();
          continue;
        }
        auto it = cells->find(col);
        r.push_back(percent(it == cells->end() ? 0.0 : it->second));
      }
      t.rows.push_back(std::move(r));
    }
    tables.push_back(std::move(t));
  }

  {
    Table t{"url_positives_histogram", "URLs by engine positives", {"positives", "fraction"}, {},
            {true, true}};
    for (const auto& [p, f] : b.url_positives_histogram) t.rows.push_back({std::to_string(p), fraction(f)});
    tables.push_back(std::move(t));
  }

  {
    Table t{"urls_by_app_category",
            "URLs per app by app category",
            {"category", "min", "q1", "median", "q3", "max", "lower_fence", "upper_fence", "whisker_low",
             "whisker_high", "outliers"},
            {},
            {false, true, true, true, true, true, true, true, true, true, false}};
    for (const auto& [category, s] : b.urls_by_app_category) {
      std::string outliers;
      for (double o : s.outliers) {
        if (!outliers.empty()) outliers += ';';
        outliers += fixed(o, 3);
      }
      t.rows.push_back({category, fixed(s.min, 3), fixed(s.q1, 3), fixed(s.median, 3), fixed(s.q3, 3),
                        fixed(s.max, 3), fixed(s.lower_fence, 3), fixed(s.upper_fence, 3),
                        fixed(s.whisker_low, 3), fixed(s.whisker_high, 3), outliers});
    }
    tables.push_back(std::move(t));
  }

  {
    Table t{"cdfs", "Per-app distributions", {"metric", "value", "fraction"}, {}, {false, true, true}};
    for (const auto& [metric, points] : b.cdfs) {
      for (const auto& [x, y] : points) t.rows.push_back({metric, fixed(x, 3), fraction(y)});
    }
    tables.push_back(std::move(t));
  }

  {
    const auto& p = b.provenance;
    Table t{"provenance", "Provenance", {"key", "value"}, {}, {false, false}};
    t.rows = {{"tool_version", p.tool_version},
              {"ad_list_sha256", p.ad_list_sha256},
              {"tracker_list_sha256", p.tracker_list_sha256},
              {"suffix_list_sha256", p.suffix_list_sha256},
              {"reputation_provider", p.reputation_provider},
              {"alpha", fixed(p.alpha, 3)},
              {"beta", fixed(p.beta, 3)},
              {"suspicious_threshold", std::to_string(p.suspicious_threshold)},
              {"top_n", count(p.top_n)}};
    std::string axes;
    for (const auto& a : p.axes) axes += (axes.empty() ? "" : ";") + a;
    t.rows.push_back({"axes", axes});
    for (const auto& [raw, reg] : p.whitelist) t.rows.push_back({"whitelist:" + raw, reg});
    for (const auto& [k, v] : p.notes) t.rows.push_back({"note:" + k, v});
    tables.push_back(std::move(t));
  }
  return tables;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&out](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += csv_field(r[i]);
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

void render_aligned(std::ostringstream& out, const Table& t, std::size_t max_rows) {
  out << t.title << '\n';
  std::vector<std::size_t> width(t.header.size());
  std::size_t shown = std::min(max_rows, t.rows.size());
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  for (std::size_t r = 0; r < shown; ++r) {
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) width[i] = std::max(width[i], t.rows[r][i].size());
  }
  auto line = [&](const Row& row) {
    std::string s;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += "  ";
      std::string pad(width[i] - row[i].size(), ' ');
      s += t.numeric[i] ? pad + row[i] : row[i] + pad;
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << '\n';
  };
  line(t.header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (std::size_t r = 0; r < shown; ++r) line(t.rows[r]);
  if (shown < t.rows.size()) out << "(" << t.rows.size() - shown << " more rows)\n";
  if (t.rows.empty()) out << "(none)\n";
  out << '\n';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  try {
    write_file_atomic(path, text);
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError("cannot write " + path.string() + ": " + e.what());
  }
}

}  // namespace

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "text") return ReportFormat::kText;
  throw ConfigError("unknown report format: " + std::string(s));
}

std::map<std::string, std::string> render_csv_tables(const ReportBundle& bundle) {
  std::map<std::string, std::string> out;
  for (const auto& t : build_tables(bundle)) out[t.stem] = to_csv(t);
  return out;
}

std::string render_text(const ReportBundle& bundle) {
  std::ostringstream out;
  out << "appscope report (tool " << bundle.provenance.tool_version << ")\n\n";
  const std::size_t n = std::max<std::size_t>(bundle.provenance.top_n, 1);
  for (const auto& t : build_tables(bundle)) {
    if (t.stem == "cdfs" || t.stem == "apps") continue;
    bool full = t.stem == "counts" || t.stem == "provenance" || t.stem == "safety_histogram" ||
                t.stem == "category_matrix" || t.stem == "urls_by_app_category";
    render_aligned(out, t, full ? t.rows.size() : n);
  }
  std::string text = out.str();
  while (text.size() > 1 && text[text.size() - 1] == '\n' && text[text.size() - 2] == '\n') text.pop_back();
  return text;
}

std::vector<std::filesystem::path> emit_report(const ReportBundle& bundle, ReportFormat format,
                                               const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  switch (format) {
    case ReportFormat::kJson: {
      auto text = bundle_to_json(bundle);
      auto path = out_dir / "bundle.json";
      write_text(path, text);
      written.push_back(path);
      auto doc = detail::json::parse(text);
      auto dir = out_dir / "tables";
      std::filesystem::create_directories(dir, ec);
      if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
      for (const auto& [name, table] : doc.at("tables").items()) {
        if (name == "top") {
          for (const auto& [axis, rows] : table.items()) {
            auto p = dir / ("top_" + axis.substr(3) + ".json");
            write_text(p, rows.dump(2) + "\n");
            written.push_back(p);
          }
          continue;
        }
        auto p = dir / (name + ".json");
        write_text(p, table.dump(2) + "\n");
        written.push_back(p);
      }
      break;
    }
    case ReportFormat::kCsv:
      for (const auto& [stem, text] : render_csv_tables(bundle)) {
        auto p = out_dir / (stem + ".csv");
        write_text(p, text);
        written.push_back(p);
      }
      break;
    case ReportFormat::kText: {
      auto p = out_dir / "report.txt";
      write_text(p, render_text(bundle));
      written.push_back(p);
      break;
    }
  }
  return written;
}

}  // namespace appscope
