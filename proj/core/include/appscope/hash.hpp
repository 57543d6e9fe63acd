#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace appscope {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Lowercase hex SHA-256 of a file's contents. Throws IoError.
std::string sha256_file_hex(const std::filesystem::path& path);

/// Reads a whole file into memory. Throws IoError.
std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace appscope
