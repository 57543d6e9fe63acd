#include "appscope/public_suffix.hpp"

#include <vector>

#include "appscope/hash.hpp"
#include "appscope/url.hpp"

namespace appscope {

namespace {

// Offsets where each suffix of `host` starts: "a.b.c" -> {0, 2, 4}.
std::vector<std::size_t> label_starts(std::string_view host) {
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < host.size(); ++i) {
    if (host[i] == '.') starts.push_back(i + 1);
  }
  return starts;
}

std::string normalize_host(std::string_view fqdn) {
  std::string host = to_lower_ascii(fqdn);
  while (!host.empty() && host.back() == '.') host.pop_back();
  return host;
}

}  // namespace

PublicSuffixList PublicSuffixList::from_text(std::string_view text) {
  PublicSuffixList psl;
  psl.hash_ = sha256_hex(text);
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    auto ws = line.find_first_of(" \t\r");
    line = line.substr(0, ws);
    if (line.empty() || line.starts_with("//")) continue;
    std::string rule = to_lower_ascii(line);
    if (rule.front() == '!') {
      psl.exception_.insert(rule.substr(1));
    } else if (rule.starts_with("*.")) {
      psl.wildcard_.insert(rule.substr(2));
    } else {
      psl.exact_.insert(std::move(rule));
    }
  }
  return psl;
}

PublicSuffixList PublicSuffixList::load(const std::filesystem::path& path) {
  return from_text(read_file(path));
}

std::size_t PublicSuffixList::suffix_labels(std::string_view host) const {
  auto starts = label_starts(host);
  const std::size_t n = starts.size();
  // Exception rules win outright; the suffix is the rule minus its first label.
  for (std::size_t i = 0; i < n; ++i) {
    if (exception_.contains(std::string(host.substr(starts[i])))) return n - i - 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::string_view candidate = host.substr(starts[i]);
    if (exact_.contains(std::string(candidate))) return n - i;
    if (i + 1 < n && wildcard_.contains(std::string(host.substr(starts[i + 1])))) return n - i;
  }
  return 1;
}

std::string PublicSuffixList::public_suffix(std::string_view fqdn) const {
  std::string host = normalize_host(fqdn);
  auto starts = label_starts(host);
  std::size_t labels = std::min(suffix_labels(host), starts.size());
  return host.substr(starts[starts.size() - labels]);
}

RegistrableDomain PublicSuffixList::resolve(std::string_view fqdn) const {
  std::string host = normalize_host(fqdn);
  if (is_ip_literal(host)) return {host, false, true};
  auto starts = label_starts(host);
  std::size_t labels = suffix_labels(host);
  if (labels >= starts.size()) return {host, true, false};
  return {host.substr(starts[starts.size() - labels - 1]), false, false};
}

}  // namespace appscope
