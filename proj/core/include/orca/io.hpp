#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace orca {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Parses a full field as double; returns false on trailing garbage or empty input.
bool parse_double(std::string_view text, double& out);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view line, char sep);

/// Reads a whole file. Throws FileNotFound / IoError.
std::string read_file(const std::string& path);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace orca
