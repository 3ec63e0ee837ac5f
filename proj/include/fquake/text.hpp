#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fquake {

std::string trim(std::string_view s);

/// Split one CSV record on commas. Double-quoted fields may contain commas;
/// doubled quotes inside a quoted field are unescaped.
std::vector<std::string> split_csv_line(std::string_view line);

/// Parses a decimal number (decimal point only, surrounding blanks allowed).
std::optional<double> parse_double(std::string_view s);

/// Shortest representation that round-trips; locale-independent.
std::string format_double(double x);

/// Comma-separated list of positive integers, e.g. "3,9,18,30".
std::vector<std::size_t> parse_size_list(std::string_view s);

}  // namespace fquake
