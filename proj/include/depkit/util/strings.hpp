#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace depkit::util {

// ASCII-only case folding; multibyte UTF-8 sequences pass through untouched.
std::string to_lower_ascii(std::string_view s);

bool contains_ci(std::string_view haystack, std::string_view needle);

std::string trim(std::string_view s);

// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

bool starts_with_ci(std::string_view s, std::string_view prefix);

// Fixed-point decimal with `digits` fractional digits (printf rounding).
std::string format_fixed(double value, int digits);

// Percentage with at most one decimal; a trailing ".0" is dropped ("96", "74.5").
std::string format_percent(double fraction);

}  // namespace depkit::util
