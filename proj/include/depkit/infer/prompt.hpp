#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace depkit::infer {

struct ChatMessage {
    std::string role;
    std::string content;
};

enum class ParsedLabel { DEPRESSED, NON_DEPRESSED, UNPARSED };

struct PromptTemplate {
    std::string system_instruction =
        "You are a mental-health text classifier. Answer with exactly one word: depressive or "
        "non-depressive.";
    std::string user_wrapper = "Classify the following post: {post}";
    std::string positive_keyword = "depressive";
    std::string negative_keyword = "non-depressive";
};

// Requires exactly one "{post}" placeholder and keywords that stay distinct
// after matching normalization. The positive keyword must not contain the
// negative one: the negative keyword is matched first, so the reverse overlap
// ("non-depressive" containing "depressive") is fine.
void validate_template(const PromptTemplate& t);

// [system, user]; the placeholder is substituted exactly once, with no
// rescanning of the substituted post text.
std::vector<ChatMessage> render_prompt(const PromptTemplate& t, std::string_view post_text);

// Lowercases and strips spaces/hyphens on both sides before searching, so
// "non depressive" matches "non-depressive". Never throws.
ParsedLabel parse_label(std::string_view raw_output, const PromptTemplate& t);

std::string keyword_for(const PromptTemplate& t, bool positive);

}  // namespace depkit::infer
