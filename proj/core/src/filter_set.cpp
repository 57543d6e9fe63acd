#include "appscope/filter_set.hpp"

#include <algorithm>

#include "appscope/hash.hpp"

namespace appscope {

namespace {

/// First literal token with at least kKeySize bytes, truncated to the key size.
std::string_view index_key(const FilterRule& rule) {
  for (const auto& t : rule.pattern) {
    if (t.type == PatternToken::Type::kLiteral && t.text.size() >= RuleIndex::kKeySize) {
      return std::string_view(t.text).substr(0, RuleIndex::kKeySize);
    }
  }
  return {};
}

bool rule_matches(const FilterRule& rule, std::string_view literal, const PreparedUrl& url,
                  const MatchContext& context) {
  if (!literal.empty() && url.text.find(literal) == std::string::npos) return false;
  if (!pattern_matches(rule, url.text, url.host_begin, url.host_end)) return false;
  return options_allow(rule.options, url, context);
}

}  // namespace

std::size_t FilterSetStats::request_rule_lines() const {
  std::size_t n = lines;
  for (auto reason : {SkipReason::kEmpty, SkipReason::kComment, SkipReason::kHeader,
                      SkipReason::kCosmetic}) {
    if (auto it = skipped_by_reason.find(std::string(to_string(reason)));
        it != skipped_by_reason.end()) {
      n -= it->second;
    }
  }
  return n;
}

void RuleIndex::add(std::uint32_t id, const FilterRule& rule) {
  auto key = index_key(rule);
  if (key.empty()) {
    always_.push_back(id);
    return;
  }
  buckets_[std::string(key)].push_back(id);
  ++keyed_;
}

void RuleIndex::candidates(std::string_view url, std::vector<std::uint32_t>& out) const {
  out.assign(always_.begin(), always_.end());
  if (!buckets_.empty() && url.size() >= kKeySize) {
    for (std::size_t i = 0; i + kKeySize <= url.size(); ++i) {
      auto it = buckets_.find(url.substr(i, kKeySize));
      if (it != buckets_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

void FilterSet::add_line(std::string_view line) {
  ++stats_.lines;
  auto parsed = parse_rule(line);
  if (auto* skipped = std::get_if<Skipped>(&parsed)) {
    ++stats_.skipped;
    ++stats_.skipped_by_reason[std::string(to_string(skipped->reason))];
    return;
  }
  auto& rule = std::get<FilterRule>(parsed);
  for (const auto& opt : rule.options.unsupported_options) ++stats_.unsupported_options[opt];
  auto& list = rule.is_exception ? exceptions_ : blocking_;
  auto& index = rule.is_exception ? exception_index_ : blocking_index_;
  auto& literals = rule.is_exception ? exception_literals_ : blocking_literals_;
  index.add(static_cast<std::uint32_t>(list.size()), rule);
  literals.emplace_back(longest_literal(rule));
  list.push_back(std::move(rule));
}

void FilterSet::finish() {
  stats_.blocking = blocking_.size();
  stats_.exceptions = exceptions_.size();
}

FilterSet FilterSet::compile(std::span<const std::string> lines) {
  FilterSet set;
  std::string joined;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    set.add_line(lines[i]);
    if (i) joined.push_back('\n');
    joined += lines[i];
  }
  set.finish();
  set.hash_ = sha256_hex(joined);
  return set;
}

FilterSet FilterSet::compile_text(std::string_view text) {
  FilterSet set;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    set.add_line(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
  }
  set.finish();
  set.hash_ = sha256_hex(text);
  return set;
}

FilterSet FilterSet::load(const std::filesystem::path& path) { return compile_text(read_file(path)); }

MatchResult FilterSet::match(std::string_view url, const MatchContext& context) const {
  auto prepared = PreparedUrl::from(url);
  MatchResult result;
  std::vector<std::uint32_t> ids;
  blocking_index_.candidates(prepared.text, ids);
  for (auto id : ids) {
    if (rule_matches(blocking_[id], blocking_literals_[id], prepared, context)) {
      result.rule = &blocking_[id];
      break;
    }
  }
  if (!result.rule) return result;
  exception_index_.candidates(prepared.text, ids);
  for (auto id : ids) {
    if (rule_matches(exceptions_[id], exception_literals_[id], prepared, context)) {
      result.exception = &exceptions_[id];
      return result;
    }
  }
  result.matched = true;
  return result;
}

MatchResult FilterSet::match_linear(std::string_view url, const MatchContext& context) const {
  auto prepared = PreparedUrl::from(url);
  MatchResult result;
  for (const auto& rule : blocking_) {
    if (rule_matches(rule, {}, prepared, context)) {
      result.rule = &rule;
      break;
    }
  }
  if (!result.rule) return result;
  for (const auto& rule : exceptions_) {
    if (rule_matches(rule, {}, prepared, context)) {
      result.exception = &rule;
      return result;
    }
  }
  result.matched = true;
  return result;
}

}  // namespace appscope
