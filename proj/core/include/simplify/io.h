#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace simplify::io {

// Reads a UTF-8 text file into LF-separated lines. A trailing CR is stripped
// from each line. Throws DataError if the file cannot be opened.
std::vector<std::string> read_lines(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Writes atomically enough for our purposes: truncate and write.
void write_file(const std::filesystem::path& path, std::string_view contents);

std::vector<std::string_view> split(std::string_view line, char sep);
std::vector<std::string> split_whitespace(std::string_view line);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace simplify::io
