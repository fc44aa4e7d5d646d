#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hits::io {

using Json = nlohmann::ordered_json;

// Shortest decimal form that round-trips; identical on every platform.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);

// Creates parent directories as needed. Output is written byte-for-byte.
void write_file(const std::filesystem::path& path, std::string_view content);

void write_json(const std::filesystem::path& path, const Json& doc);

Json read_json(const std::filesystem::path& path);

std::vector<std::string> split_lines(std::string_view content);

// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

}  // namespace hits::io
