#pragma once

#include <string>
#include <string_view>

namespace henon {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

// Writes to a sibling temp file and renames it into place; throws
// std::runtime_error naming the path on failure.
void write_file_atomic(const std::string& path, std::string_view bytes);

std::string read_file(const std::string& path);

}  // namespace henon
