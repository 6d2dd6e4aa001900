#include "depkit/infer/prompt.hpp"

#include <stdexcept>

#include "depkit/util/strings.hpp"

namespace depkit::infer {

namespace {

constexpr std::string_view kPlaceholder = "{post}";

std::string normalize_for_match(std::string_view s) {
    std::string lowered = util::to_lower_ascii(s);
    std::string out;
    out.reserve(lowered.size());
    for (char c : lowered) {
        if (c != '-' && c != ' ') out.push_back(c);
    }
    return out;
}

size_t count_occurrences(std::string_view haystack, std::string_view needle) {
    size_t count = 0, pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

void validate_template(const PromptTemplate& t) {
    size_t n = count_occurrences(t.user_wrapper, kPlaceholder);
    if (n == 0) throw std::invalid_argument("user_wrapper is missing the {post} placeholder");
    if (n > 1) throw std::invalid_argument("user_wrapper must contain {post} exactly once");

    std::string pos = normalize_for_match(t.positive_keyword);
    std::string neg = normalize_for_match(t.negative_keyword);
    if (pos.empty() || neg.empty()) throw std::invalid_argument("keywords must be non-empty");
    if (pos == neg) throw std::invalid_argument("keywords must be distinct");
    if (pos.find(neg) != std::string::npos) {
        throw std::invalid_argument(
            "positive keyword must not contain the negative keyword; the negative keyword is "
            "matched first");
    }
}

std::vector<ChatMessage> render_prompt(const PromptTemplate& t, std::string_view post_text) {
    validate_template(t);
    std::string user = t.user_wrapper;
    size_t at = user.find(kPlaceholder);
    user.replace(at, kPlaceholder.size(), post_text);
    return {{"system", t.system_instruction}, {"user", std::move(user)}};
}

ParsedLabel parse_label(std::string_view raw_output, const PromptTemplate& t) {
    std::string text = normalize_for_match(raw_output);
    if (text.find(normalize_for_match(t.negative_keyword)) != std::string::npos) {
        return ParsedLabel::NON_DEPRESSED;
    }
    if (text.find(normalize_for_match(t.positive_keyword)) != std::string::npos) {
        return ParsedLabel::DEPRESSED;
    }
    return ParsedLabel::UNPARSED;
}

std::string keyword_for(const PromptTemplate& t, bool positive) {
    return positive ? t.positive_keyword : t.negative_keyword;
}

}  // namespace depkit::infer
