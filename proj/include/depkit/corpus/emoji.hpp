#pragma once

#include <map>
#include <string>
#include <string_view>

namespace depkit::corpus {

// Lookup table from emoji sequence (UTF-8 key) to polarity in {-1, 0, +1}.
class EmojiSentimentLibrary {
public:
    EmojiSentimentLibrary() = default;

    // Throws on duplicate keys, polarity outside {-1,0,+1}, or keys that are
    // not plausible emoji sequences.
    void add(std::string emoji, int polarity);

    static EmojiSentimentLibrary load_tsv(const std::string& path);

    const std::map<std::string, int>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

private:
    std::map<std::string, int> entries_;
};

struct EmojiAnnotation {
    int count = 0;
    int polarity_sum = 0;
};

// Greedy longest-match scan against the library; emoji-range codepoints not in
// the library count once with polarity 0.
EmojiAnnotation annotate_emojis(std::string_view text, const EmojiSentimentLibrary& lib);

}  // namespace depkit::corpus
