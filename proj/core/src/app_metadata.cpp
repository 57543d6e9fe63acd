#include "appscope/app_metadata.hpp"

#include <algorithm>
#include <cctype>

#include "appscope/errors.hpp"
#include "appscope/hash.hpp"
#include "json.hpp"

namespace appscope {

std::string canonical_category(std::string_view raw) {
  std::string out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (!out.empty()) out.push_back('_');
    out += token;
    token.clear();
  };
  for (char c : raw) {
    if (c == ' ' || c == '-' || c == '_' || c == '\t') {
      flush();
    } else if (c == '&') {
      flush();
      token = "AND";
      flush();
    } else {
      token.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  flush();
  if (out.empty() || out == kUnknownCategory) return std::string(kUnknownCategory);
  if (std::find(kStoreCategories.begin(), kStoreCategories.end(), out) == kStoreCategories.end()) {
    throw ConfigError("unknown app category: " + std::string(raw));
  }
  return out;
}

AppMetadata parse_metadata_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metadata: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("metadata: expected a JSON object");

  AppMetadata m;
  try {
    if (auto it = doc.find("name"); it != doc.end() && !it->is_null()) m.name = it->get<std::string>();
    if (auto it = doc.find("category"); it != doc.end() && !it->is_null()) {
      m.category = canonical_category(it->get<std::string>());
    }
    if (auto it = doc.find("rating"); it != doc.end() && !it->is_null()) {
      double r = it->get<double>();
      if (r < 1.0 || r > 5.0) throw ConfigError("metadata: rating outside [1, 5]");
      m.rating = r;
    }
    if (auto it = doc.find("downloads"); it != doc.end() && !it->is_null()) {
      if (!it->is_number_unsigned()) throw ConfigError("metadata: downloads must be a nonnegative integer");
      m.downloads = it->get<std::uint64_t>();
    }
    if (auto it = doc.find("top_developer"); it != doc.end() && !it->is_null()) {
      m.top_developer = it->get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metadata: ") + e.what());
  }
  return m;
}

AppMetadata load_metadata(const std::filesystem::path& path) {
  return parse_metadata_json(read_file(path));
}

}  // namespace appscope
