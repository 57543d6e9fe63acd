#include "appscope/filter_rule.hpp"

#include <algorithm>
#include <cctype>
#include <span>

#include "appscope/errors.hpp"
#include "appscope/public_suffix.hpp"
#include "appscope/url.hpp"

namespace appscope {

namespace {

constexpr std::string_view kScheme = "http://";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_cosmetic(std::string_view line) {
  for (std::string_view marker : {"##", "#@#", "#?#", "#@?#", "#$#", "#@$#", "#%#", "#@%#"}) {
    if (line.find(marker) != std::string_view::npos) return true;
  }
  return false;
}

bool is_option_token(std::string_view token) {
  if (token.empty()) return false;
  if (token.front() == '~') token.remove_prefix(1);
  auto eq = token.find('=');
  std::string_view name = token.substr(0, eq);
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_';
  });
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

/// Offset of the `$` that starts a valid option list, or npos.
std::size_t find_options(std::string_view body) {
  auto dollar = body.rfind('$');
  if (dollar == std::string_view::npos || dollar + 1 >= body.size()) return std::string_view::npos;
  for (auto token : split(body.substr(dollar + 1), ',')) {
    if (!is_option_token(token)) return std::string_view::npos;
  }
  return dollar;
}

// Options that only make sense for page-level exceptions; they never let a
// request through.
bool is_page_level_option(std::string_view name) {
  return name == "elemhide" || name == "ehide" || name == "generichide" || name == "ghide" ||
         name == "genericblock" || name == "specifichide" || name == "shide";
}

std::optional<Skipped> apply_options(std::string_view text, bool is_exception, RuleOptions& options) {
  std::optional<std::string> page_level;
  bool request_type = false;
  for (auto token : split(text, ',')) {
    std::string lowered = to_lower_ascii(token);
    std::string_view opt = lowered;
    auto eq = opt.find('=');
    std::string_view name = opt.substr(0, eq);
    std::string_view value = eq == std::string_view::npos ? std::string_view{} : opt.substr(eq + 1);

    if (name == "domain") {
      for (auto d : split(value, '|')) {
        if (d.empty()) continue;
        if (d.front() == '~') {
          d.remove_prefix(1);
          if (!d.empty()) options.exclude_domains.emplace(d);
        } else {
          options.include_domains.emplace(d);
        }
      }
    } else if (name == "third-party" || name == "3p" || name == "~first-party" || name == "~1p") {
      options.third_party = ThirdParty::kRequire;
    } else if (name == "~third-party" || name == "~3p" || name == "first-party" || name == "1p") {
      options.third_party = ThirdParty::kForbid;
    } else if (name == "csp" || name == "badfilter") {
      return Skipped{SkipReason::kUnsupportedType, std::string(name)};
    } else if (is_page_level_option(name)) {
      page_level = std::string(name);
      options.unsupported_options.emplace(opt);
    } else {
      request_type = true;
      options.unsupported_options.emplace(opt);
    }
  }
  if (is_exception && page_level && !request_type) {
    return Skipped{SkipReason::kUnsupportedType, *page_level};
  }
  return std::nullopt;
}

std::vector<PatternToken> tokenize(std::string_view pattern) {
  std::vector<PatternToken> tokens;
  for (char c : pattern) {
    if (c == '*') {
      if (tokens.empty() || tokens.back().type != PatternToken::Type::kWildcard) {
        tokens.push_back({PatternToken::Type::kWildcard, {}});
      }
    } else if (c == '^') {
      tokens.push_back({PatternToken::Type::kSeparator, {}});
    } else {
      if (tokens.empty() || tokens.back().type != PatternToken::Type::kLiteral) {
        tokens.push_back({PatternToken::Type::kLiteral, {}});
      }
      unsigned char u = static_cast<unsigned char>(c);
      tokens.back().text.push_back(static_cast<char>(u >= 'A' && u <= 'Z' ? u - 'A' + 'a' : u));
    }
  }
  return tokens;
}

bool domain_matches(std::string_view origin, std::string_view domain) {
  if (origin == domain) return true;
  return origin.size() > domain.size() && origin.ends_with(domain) &&
         origin[origin.size() - domain.size() - 1] == '.';
}

std::string fallback_registrable(std::string_view host) {
  auto last = host.rfind('.');
  if (last == std::string_view::npos || last == 0) return std::string(host);
  auto prev = host.rfind('.', last - 1);
  return std::string(prev == std::string_view::npos ? host : host.substr(prev + 1));
}

/// Matches a run of non-wildcard tokens starting at `pos`. Returns the end
/// position or npos.
std::size_t match_segment(std::span<const PatternToken> segment, std::string_view url,
                          std::size_t pos) {
  for (const auto& token : segment) {
    if (token.type == PatternToken::Type::kLiteral) {
      if (url.size() - pos < token.text.size() ||
          url.compare(pos, token.text.size(), token.text) != 0) {
        return std::string_view::npos;
      }
      pos += token.text.size();
    } else {
      // separator: one separator byte, or the end of the URL
      if (pos == url.size()) continue;
      if (!is_separator_char(static_cast<unsigned char>(url[pos]))) return std::string_view::npos;
      ++pos;
    }
  }
  return pos;
}

}  // namespace

std::string_view to_string(SkipReason reason) {
  switch (reason) {
    case SkipReason::kEmpty: return "empty line";
    case SkipReason::kComment: return "comment";
    case SkipReason::kHeader: return "list header";
    case SkipReason::kCosmetic: return "element hiding";
    case SkipReason::kRegex: return "regex rule";
    case SkipReason::kEmptyPattern: return "empty pattern";
    case SkipReason::kUnsupportedType: return "unsupported rule type";
  }
  return "unknown";
}

RuleKind FilterRule::kind() const {
  if (start_anchor == StartAnchor::kHost) return RuleKind::kHostAnchored;
  if (start_anchor == StartAnchor::kStart) return RuleKind::kStartAnchored;
  if (end_anchored) return RuleKind::kEndAnchored;
  return RuleKind::kPlain;
}

ParseResult parse_rule(std::string_view line) {
  std::string_view text = trim(line);
  if (text.empty()) return Skipped{SkipReason::kEmpty, {}};
  if (text.front() == '!') return Skipped{SkipReason::kComment, {}};
  if (text.front() == '[' && text.back() == ']') return Skipped{SkipReason::kHeader, {}};
  if (is_cosmetic(text)) return Skipped{SkipReason::kCosmetic, {}};

  FilterRule rule;
  rule.raw = std::string(text);
  std::string_view body = text;
  if (body.starts_with("@@")) {
    rule.is_exception = true;
    body.remove_prefix(2);
  }
  if (auto dollar = find_options(body); dollar != std::string_view::npos) {
    if (auto skipped = apply_options(body.substr(dollar + 1), rule.is_exception, rule.options)) {
      return *skipped;
    }
    body = body.substr(0, dollar);
  }
  if (body.size() >= 2 && body.front() == '/' && body.back() == '/') {
    return Skipped{SkipReason::kRegex, {}};
  }
  if (body.starts_with("||")) {
    rule.start_anchor = StartAnchor::kHost;
    body.remove_prefix(2);
  } else if (body.starts_with("|")) {
    rule.start_anchor = StartAnchor::kStart;
    body.remove_prefix(1);
  }
  if (body.ends_with("|")) {
    rule.end_anchored = true;
    body.remove_suffix(1);
  }
  if (body.empty()) return Skipped{SkipReason::kEmptyPattern, "empty pattern"};
  rule.pattern = tokenize(body);
  return rule;
}

PreparedUrl PreparedUrl::from(std::string_view url) {
  if (url.size() < kScheme.size() || to_lower_ascii(url.substr(0, kScheme.size())) != kScheme) {
    throw PreconditionError("filter matching requires an http:// URL: " + std::string(url));
  }
  PreparedUrl out;
  out.text = to_lower_ascii(url);
  out.host_begin = kScheme.size();
  std::string_view rest = std::string_view(out.text).substr(out.host_begin);
  std::size_t len;
  if (!rest.empty() && rest.front() == '[') {
    auto close = rest.find(']');
    len = close == std::string_view::npos ? rest.size() : close + 1;
  } else {
    len = std::min(rest.find_first_of(":/?#"), rest.size());
  }
  out.host_end = out.host_begin + len;
  return out;
}

bool is_separator_char(unsigned char c) {
  return !(std::isalnum(c) && c < 0x80) && c != '_' && c != '-' && c != '.' && c != '%';
}

bool pattern_matches(const FilterRule& rule, std::string_view url, std::size_t host_begin,
                     std::size_t host_end) {
  // Split into wildcard-separated segments: segs[0] * segs[1] * ... * segs[k].
  std::vector<std::span<const PatternToken>> segs;
  std::span<const PatternToken> tokens(rule.pattern);
  std::size_t seg_start = 0;
  for (std::size_t i = 0; i <= tokens.size(); ++i) {
    if (i == tokens.size() || tokens[i].type == PatternToken::Type::kWildcard) {
      segs.push_back(tokens.subspan(seg_start, i - seg_start));
      seg_start = i + 1;
    }
  }
  const std::size_t n = url.size();
  const std::size_t k = segs.size() - 1;

  auto match_from = [&](std::size_t start) {
    std::size_t pos = match_segment(segs[0], url, start);
    if (pos == std::string_view::npos) return false;
    if (k == 0) return !rule.end_anchored || pos == n;
    // Leftmost placement of each middle segment is optimal: segment ends grow
    // with their start.
    for (std::size_t i = 1; i < k; ++i) {
      std::size_t q = pos;
      std::size_t end = std::string_view::npos;
      for (; q <= n; ++q) {
        end = match_segment(segs[i], url, q);
        if (end != std::string_view::npos) break;
      }
      if (end == std::string_view::npos) return false;
      pos = end;
    }
    for (std::size_t q = pos; q <= n; ++q) {
      std::size_t end = match_segment(segs[k], url, q);
      if (end == std::string_view::npos) continue;
      if (!rule.end_anchored || end == n) return true;
    }
    return false;
  };

  switch (rule.start_anchor) {
    case StartAnchor::kStart:
      return match_from(0);
    case StartAnchor::kHost:
      if (match_from(host_begin)) return true;
      for (std::size_t i = host_begin + 1; i < host_end; ++i) {
        if (url[i - 1] == '.' && match_from(i)) return true;
      }
      return false;
    case StartAnchor::kNone:
      if (segs[0].empty()) return match_from(0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (match_from(i)) return true;
      }
      return false;
  }
  return false;
}

bool options_allow(const RuleOptions& options, const PreparedUrl& url, const MatchContext& context) {
  if (!options.include_domains.empty() || !options.exclude_domains.empty()) {
    if (!context.origin_domain) {
      if (!options.include_domains.empty()) return false;
    } else {
      std::string origin = to_lower_ascii(*context.origin_domain);
      // The most specific listed domain decides.
      std::size_t best = 0;
      bool best_included = options.include_domains.empty();
      for (const auto& d : options.include_domains) {
        if (domain_matches(origin, d) && d.size() + 1 > best) {
          best = d.size() + 1;
          best_included = true;
        }
      }
      for (const auto& d : options.exclude_domains) {
        if (domain_matches(origin, d) && d.size() + 1 >= best) {
          best = d.size() + 1;
          best_included = false;
        }
      }
      if (!best_included) return false;
    }
  }
  if (options.third_party != ThirdParty::kIgnore && context.origin_domain) {
    auto registrable = [&](std::string_view host) {
      return context.suffixes ? context.suffixes->registrable_domain(host)
                              : fallback_registrable(to_lower_ascii(host));
    };
    bool third = registrable(*context.origin_domain) != registrable(url.host());
    if (options.third_party == ThirdParty::kRequire && !third) return false;
    if (options.third_party == ThirdParty::kForbid && third) return false;
  }
  return true;
}

std::string_view longest_literal(const FilterRule& rule) {
  std::string_view best;
  for (const auto& t : rule.pattern) {
    if (t.type == PatternToken::Type::kLiteral && t.text.size() > best.size()) best = t.text;
  }
  return best;
}

}  // namespace appscope
