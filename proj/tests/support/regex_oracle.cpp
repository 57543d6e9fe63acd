#include "regex_oracle.hpp"

#include <algorithm>
#include <cctype>

namespace appscope::testing {

namespace {

struct Split {
  bool exception = false;
  std::string pattern;
  std::string options;
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<Split> split_line(std::string_view line) {
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
  if (line.empty() || line[0] == '!' || line[0] == '[') return std::nullopt;
  for (const char* marker : {"##", "#@#", "#?#", "#$#"}) {
    if (line.find(marker) != std::string_view::npos) return std::nullopt;
  }
  Split s;
  if (line.starts_with("@@")) {
    s.exception = true;
    line.remove_prefix(2);
  }
  auto dollar = line.rfind('$');
  if (dollar != std::string_view::npos) {
    s.options = lower(line.substr(dollar + 1));
    line = line.substr(0, dollar);
  }
  if (line.size() >= 2 && line.front() == '/' && line.back() == '/') return std::nullopt;
  s.pattern = std::string(line);
  return s;
}

std::string host_of(const std::string& url) {
  auto start = url.find("://");
  start = start == std::string::npos ? 0 : start + 3;
  auto end = url.find_first_of("/:?#", start);
  return lower(url.substr(start, end == std::string::npos ? std::string::npos : end - start));
}

bool under(const std::string& host, const std::string& domain) {
  return host == domain || (host.size() > domain.size() && host.ends_with("." + domain));
}

}  // namespace

std::optional<std::string> RegexOracle::translate(std::string_view line) {
  auto s = split_line(line);
  if (!s) return std::nullopt;
  std::string_view p = s->pattern;
  std::string re;
  if (p.starts_with("||")) {
    re = "^[a-z][a-z0-9+.\\-]*://(?:[^/:?#]*\\.)?";
    p.remove_prefix(2);
  } else if (p.starts_with("|")) {
    re = "^";
    p.remove_prefix(1);
  }
  bool end = false;
  if (p.ends_with("|")) {
    end = true;
    p.remove_suffix(1);
  }
  if (p.empty()) return std::nullopt;
  for (char c : p) {
    switch (c) {
      case '*': re += ".*"; break;
      case '^': re += "(?:[^a-z0-9_.%\\-]|$)"; break;
      default:
        if (std::string_view("\\.+?()[]{}|$^/").find(c) != std::string_view::npos) re += '\\';
        re += c;
    }
  }
  if (end) re += '$';
  return re;
}

RegexOracle::RegexOracle(const std::vector<std::string>& lines, Registrable registrable)
    : registrable_(std::move(registrable)) {
  for (const auto& line : lines) {
    auto re = translate(line);
    if (!re) continue;
    auto s = *split_line(line);
    Rule r;
    r.re = std::regex(*re, std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    r.exception = s.exception;
    std::string_view opts = s.options;
    while (!opts.empty()) {
      auto comma = opts.find(',');
      auto opt = opts.substr(0, comma);
      opts = comma == std::string_view::npos ? std::string_view{} : opts.substr(comma + 1);
      if (opt.starts_with("domain=")) {
        std::string_view list = opt.substr(7);
        while (!list.empty()) {
          auto bar = list.find('|');
          auto d = list.substr(0, bar);
          list = bar == std::string_view::npos ? std::string_view{} : list.substr(bar + 1);
          if (d.empty()) continue;
          bool excluded = d.front() == '~';
          if (excluded) d.remove_prefix(1);
          r.domains.emplace_back(std::string(d), !excluded);
        }
      } else if (opt == "third-party" || opt == "3p" || opt == "~first-party" || opt == "~1p") {
        r.third_party = 1;
      } else if (opt == "~third-party" || opt == "~3p" || opt == "first-party" || opt == "1p") {
        r.third_party = -1;
      }
    }
    rules_.push_back(std::move(r));
  }
}

bool RegexOracle::applies(const Rule& r, const std::string& url,
                          const std::optional<std::string>& origin) const {
  if (!std::regex_search(url, r.re)) return false;
  if (!r.domains.empty()) {
    bool any_include = std::any_of(r.domains.begin(), r.domains.end(), [](auto& d) { return d.second; });
    if (!origin) {
      if (any_include) return false;
    } else {
      auto o = lower(*origin);
      const std::pair<std::string, bool>* best = nullptr;
      for (const auto& d : r.domains) {
        if (!under(o, d.first)) continue;
        if (!best || d.first.size() > best->first.size() ||
            (d.first.size() == best->first.size() && !d.second)) {
          best = &d;
        }
      }
      if (best ? !best->second : any_include) return false;
    }
  }
  if (r.third_party != 0 && origin) {
    bool third = registrable_(lower(*origin)) != registrable_(host_of(url));
    if (r.third_party == 1 && !third) return false;
    if (r.third_party == -1 && third) return false;
  }
  return true;
}

bool RegexOracle::blocks(const std::string& url, const std::optional<std::string>& origin) const {
  bool blocked = false;
  for (const auto& r : rules_) {
    if (!r.exception && applies(r, url, origin)) {
      blocked = true;
      break;
    }
  }
  if (!blocked) return false;
  for (const auto& r : rules_) {
    if (r.exception && applies(r, url, origin)) return false;
  }
  return true;
}

}  // namespace appscope::testing
