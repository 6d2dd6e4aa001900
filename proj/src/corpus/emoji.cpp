#include "depkit/corpus/emoji.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

#include "depkit/util/strings.hpp"
#include "depkit/util/utf8.hpp"

namespace depkit::corpus {

namespace {

bool is_emoji_codepoint(char32_t cp) {
    return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // pictographs, emoticons, transport, flags
           (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols + dingbats
           (cp >= 0x2B00 && cp <= 0x2BFF) ||    // stars, arrows
           (cp >= 0x2300 && cp <= 0x23FF) ||    // technical (watch, hourglass)
           cp == 0x2764;                        // heavy black heart
}

bool is_emoji_modifier(char32_t cp) {
    return cp == 0xFE0F || cp == 0x20E3 || (cp >= 0x1F3FB && cp <= 0x1F3FF);
}

bool plausible_emoji_key(std::string_view key) {
    if (key.empty() || !depkit::util::is_valid_utf8(key)) return false;
    bool has_non_ascii = false;
    size_t i = 0;
    while (i < key.size()) {
        unsigned char b = static_cast<unsigned char>(key[i]);
        if (b < 0x80 && std::isspace(b)) return false;
        auto cp = depkit::util::decode_utf8(key, i);
        if (cp.value >= 0x80) has_non_ascii = true;
        i += cp.length;
    }
    return has_non_ascii;
}

}  // namespace

void EmojiSentimentLibrary::add(std::string emoji, int polarity) {
    if (polarity < -1 || polarity > 1) {
        throw std::invalid_argument("emoji polarity must be -1, 0, or +1 (got " +
                                    std::to_string(polarity) + ")");
    }
    if (!plausible_emoji_key(emoji)) {
        throw std::invalid_argument("not a valid emoji sequence key: '" + emoji + "'");
    }
    auto [it, inserted] = entries_.emplace(std::move(emoji), polarity);
    if (!inserted) throw std::invalid_argument("duplicate emoji key: '" + it->first + "'");
}

EmojiSentimentLibrary EmojiSentimentLibrary::load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open emoji library: " + path);
    EmojiSentimentLibrary lib;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = util::split(line, '\t');
        if (fields.size() != 2) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected emoji<TAB>polarity");
        }
        int polarity = 0;
        try {
            polarity = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": polarity is not an integer");
        }
        try {
            lib.add(fields[0], polarity);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return lib;
}

EmojiAnnotation annotate_emojis(std::string_view text, const EmojiSentimentLibrary& lib) {
    EmojiAnnotation out;
    size_t i = 0;
    while (i < text.size()) {
        // longest library key matching at this position
        const std::string* best = nullptr;
        int best_polarity = 0;
        for (const auto& [key, polarity] : lib.entries()) {
            if (key.size() <= text.size() - i && text.compare(i, key.size(), key) == 0) {
                if (!best || key.size() > best->size()) {
                    best = &key;
                    best_polarity = polarity;
                }
            }
        }
        if (best) {
            ++out.count;
            out.polarity_sum += best_polarity;
            i += best->size();
            continue;
        }
        auto cp = util::decode_utf8(text, i);
        if (is_emoji_codepoint(cp.value)) {
            // unknown emoji: swallow the whole cluster (modifiers, ZWJ joins)
            i += cp.length;
            while (i < text.size()) {
                auto next = util::decode_utf8(text, i);
                if (is_emoji_modifier(next.value)) {
                    i += next.length;
                } else if (next.value == 0x200D) {
                    auto after = util::decode_utf8(text, i + next.length);
                    if (is_emoji_codepoint(after.value)) {
                        i += next.length + after.length;
                    } else {
                        break;
                    }
                } else {
                    break;
                }
            }
            ++out.count;
        } else {
            i += cp.length;
        }
    }
    return out;
}

}  // namespace depkit::corpus
