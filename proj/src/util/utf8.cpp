#include "depkit/util/utf8.hpp"

namespace depkit::util {

Codepoint decode_utf8(std::string_view s, size_t pos) {
    if (pos >= s.size()) return {0xFFFD, 0};
    const auto byte = [&](size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) return {b0, 1};

    size_t need = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) { need = 1; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { need = 2; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { need = 3; cp = b0 & 0x07; }
    else return {0xFFFD, 1};

    if (pos + need >= s.size()) return {0xFFFD, 1};
    for (size_t i = 1; i <= need; ++i) {
        unsigned char b = byte(pos + i);
        if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
        cp = (cp << 6) | (b & 0x3F);
    }
    // overlong / out-of-range forms
    if (need == 1 && cp < 0x80) return {0xFFFD, 1};
    if (need == 2 && cp < 0x800) return {0xFFFD, 1};
    if (need == 3 && cp < 0x10000) return {0xFFFD, 1};
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {0xFFFD, 1};
    return {cp, need + 1};
}

bool is_valid_utf8(std::string_view s) {
    size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        Codepoint cp = decode_utf8(s, i);
        if (cp.value == 0xFFFD && !(b == 0xEF && cp.length == 3)) {
            // U+FFFD itself is a valid 3-byte sequence; anything else is an error
            if (cp.length == 1 && b >= 0x80) return false;
        }
        i += cp.length;
    }
    return true;
}

}  // namespace depkit::util
