#pragma once

#include <string_view>

#include "depkit/corpus/types.hpp"

namespace depkit::corpus {

// Precedence D1 > D3 > D2: a diagnosis phrase wins over a bare candidate
// term, and only posts inside `window` can become D2. Matching is
// case-insensitive. Throws on empty text.
LabelSource classify_anchor(std::string_view tweet_text, util::UnixSeconds created_at,
                            const AnchorRuleSet& rules, const util::TimeWindow& window);

}  // namespace depkit::corpus
