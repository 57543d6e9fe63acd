#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>

namespace appscope {

struct RegistrableDomain {
  std::string domain;
  bool suffix_only = false;  // the input is itself a public suffix
  bool ip_literal = false;
};

/// Public Suffix List matcher (publicsuffix.org format: one rule per line,
/// `//` comments, `*.` wildcards, `!` exceptions). Immutable once loaded.
class PublicSuffixList {
 public:
  PublicSuffixList() = default;

  static PublicSuffixList from_text(std::string_view text);
  /// Throws IoError.
  static PublicSuffixList load(const std::filesystem::path& path);

  /// The public suffix of `fqdn` (lowercased). An unlisted TLD is its own suffix.
  [[nodiscard]] std::string public_suffix(std::string_view fqdn) const;

  /// eTLD+1. IP literals and bare suffixes come back unchanged and flagged.
  [[nodiscard]] RegistrableDomain resolve(std::string_view fqdn) const;
  [[nodiscard]] std::string registrable_domain(std::string_view fqdn) const {
    return resolve(fqdn).domain;
  }

  [[nodiscard]] std::size_t rule_count() const {
    return exact_.size() + wildcard_.size() + exception_.size();
  }
  /// SHA-256 of the loaded text, empty for a default-constructed list.
  [[nodiscard]] const std::string& content_hash() const { return hash_; }

 private:
  /// Number of trailing labels forming the public suffix.
  [[nodiscard]] std::size_t suffix_labels(std::string_view host) const;

  std::unordered_set<std::string> exact_;
  std::unordered_set<std::string> wildcard_;   // "ck" for "*.ck"
  std::unordered_set<std::string> exception_;  // "www.ck" for "!www.ck"
  std::string hash_;
};

}  // namespace appscope
