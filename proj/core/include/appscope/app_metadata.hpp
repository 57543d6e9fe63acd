#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace appscope {

/// Store categories as of July 2014, plus the "UNKNOWN" fallback.
inline constexpr std::array<std::string_view, 25> kStoreCategories = {
    "BOOKS_AND_REFERENCE", "BUSINESS",          "COMICS",        "COMMUNICATION",
    "EDUCATION",           "ENTERTAINMENT",     "FINANCE",       "GAME",
    "HEALTH_AND_FITNESS",  "LIBRARIES_AND_DEMO", "LIFESTYLE",    "MEDIA_AND_VIDEO",
    "MEDICAL",             "MUSIC_AND_AUDIO",   "NEWS_AND_MAGAZINES", "PERSONALIZATION",
    "PHOTOGRAPHY",         "PRODUCTIVITY",      "SHOPPING",      "SOCIAL",
    "SPORTS",              "TOOLS",             "TRANSPORTATION", "TRAVEL_AND_LOCAL",
    "WEATHER"};
inline constexpr std::string_view kUnknownCategory = "UNKNOWN";

struct AppMetadata {
  std::string name;
  std::string category{kUnknownCategory};
  std::optional<double> rating;                 // [1.0, 5.0]
  std::optional<std::uint64_t> downloads;
  bool top_developer = false;

  friend bool operator==(const AppMetadata&, const AppMetadata&) = default;
};

/// Canonical category name: case-insensitive, spaces/dashes/"&" folded to
/// the underscore form. Throws ConfigError for anything outside the 25 store
/// categories; empty input maps to UNKNOWN.
std::string canonical_category(std::string_view raw);

/// Parses `{name, category, rating, downloads, top_developer}`; every field
/// may be null or absent. Throws FormatError / ConfigError.
AppMetadata parse_metadata_json(std::string_view json_text);
AppMetadata load_metadata(const std::filesystem::path& path);

}  // namespace appscope
