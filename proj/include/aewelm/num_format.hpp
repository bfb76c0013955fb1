#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace aewelm {

// Shortest decimal form that parses back to the identical double
// (at most 17 significant digits).
std::string format_double(double v);

// Strict parse of the full string; nullopt on empty input or trailing junk.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);
std::optional<unsigned long long> parse_uint(std::string_view s);

}  // namespace aewelm
