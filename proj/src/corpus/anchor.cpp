#include "depkit/corpus/anchor.hpp"

#include <stdexcept>

#include "depkit/util/strings.hpp"

namespace depkit::corpus {

LabelSource classify_anchor(std::string_view tweet_text, util::UnixSeconds created_at,
                            const AnchorRuleSet& rules, const util::TimeWindow& window) {
    if (util::trim(tweet_text).empty()) {
        throw std::invalid_argument("classify_anchor: empty tweet text");
    }
    validate_rules(rules);
    for (const auto& pattern : rules.diagnosis_patterns) {
        if (util::contains_ci(tweet_text, pattern)) return LabelSource::D1_DEPRESSED;
    }
    if (util::contains_ci(tweet_text, rules.candidate_substring)) {
        return LabelSource::D3_CANDIDATE;
    }
    if (window.contains(created_at)) return LabelSource::D2_NON_DEPRESSED;
    return LabelSource::NONE;
}

}  // namespace depkit::corpus
