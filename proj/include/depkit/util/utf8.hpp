#pragma once

#include <cstdint>
#include <string_view>

namespace depkit::util {

struct Codepoint {
    char32_t value = 0xFFFD;
    size_t length = 1;  // bytes consumed
};

// Decodes the codepoint starting at `pos`. Malformed bytes decode as U+FFFD
// with length 1 so scanning is total.
Codepoint decode_utf8(std::string_view s, size_t pos);

bool is_valid_utf8(std::string_view s);

}  // namespace depkit::util
