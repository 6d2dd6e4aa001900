#include "depkit/corpus/normalize.hpp"

#include <cctype>

#include "depkit/util/strings.hpp"

namespace depkit::corpus {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_word_char(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u < 0x80 && (std::isalnum(u) || c == '_');
}

// '>' also blocks a mention: the replacement tokens end in '>', and without
// this guard a second pass could turn text after "<USER>"/"<URL>" into a
// fresh mention, breaking idempotence.
bool blocks_mention(char c) { return is_word_char(c) || c == '>'; }

bool url_starts_at(std::string_view s, size_t i) {
    std::string_view rest = s.substr(i);
    if (util::starts_with_ci(rest, "http://") || util::starts_with_ci(rest, "https://")) {
        return true;
    }
    if (util::starts_with_ci(rest, "www.") && rest.size() > 4 && !is_space(rest[4])) {
        // only at a token boundary, so words like "swww.x" stay intact
        return i == 0 || is_space(s[i - 1]);
    }
    return false;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    auto emit_space = [&] {
        if (!out.empty() && out.back() != ' ') out.push_back(' ');
    };
    size_t i = 0;
    while (i < raw.size()) {
        char c = raw[i];
        if (is_space(c)) {
            emit_space();
            ++i;
            continue;
        }
        if (url_starts_at(raw, i)) {
            while (i < raw.size() && !is_space(raw[i])) ++i;
            out += "<URL>";
            continue;
        }
        if (c == '@' && i + 1 < raw.size() && is_word_char(raw[i + 1]) &&
            (i == 0 || !blocks_mention(raw[i - 1]))) {
            ++i;
            while (i < raw.size() && is_word_char(raw[i])) ++i;
            out += "<USER>";
            continue;
        }
        out.push_back(c);
        ++i;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

}  // namespace depkit::corpus
