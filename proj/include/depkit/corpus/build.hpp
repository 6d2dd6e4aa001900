#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "depkit/corpus/emoji.hpp"
#include "depkit/corpus/types.hpp"

namespace depkit::corpus {

struct BuildStats {
    size_t users_seen = 0;
    size_t users_skipped_empty = 0;
    size_t posts_seen = 0;
    size_t d1_auto_labeled = 0;
    size_t d2_auto_labeled = 0;
    size_t d3_labeled = 0;     // reviewed candidates that entered the corpus
    size_t d3_queued = 0;      // candidates awaiting review
    size_t unlabeled = 0;      // no rule matched (outside window, no term)
};

struct BuildResult {
    LabeledCorpus corpus;
    std::vector<Post> review_queue;  // D3 candidates without an explicit label
    BuildStats stats;
};

// D1/D2 posts are auto-labeled; D3 candidates enter the corpus only through
// `reviewed_d3` (post id -> human label), otherwise they land in the review
// queue. Examples come out sorted by post id. Throws on an empty stream or a
// duplicate post id.
BuildResult build_corpus(std::span<const UserRecord> users, const AnchorRuleSet& rules,
                         const util::TimeWindow& d2_window, const EmojiSentimentLibrary& lib,
                         const std::map<std::string, Label>& reviewed_d3 = {});

}  // namespace depkit::corpus
