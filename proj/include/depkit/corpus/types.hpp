#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "depkit/eval/metrics.hpp"
#include "depkit/util/time.hpp"

namespace depkit::corpus {

using Label = eval::Label;

struct Post {
    std::string id;
    std::string author_id;
    std::string text;
    util::UnixSeconds created_at = 0;
};

struct UserRecord {
    std::string author_id;
    std::vector<Post> posts;  // ascending created_at, all sharing author_id
};

enum class LabelSource { D1_DEPRESSED, D2_NON_DEPRESSED, D3_CANDIDATE, NONE };

std::string to_string(LabelSource s);
LabelSource label_source_from_string(const std::string& s);

std::string to_string(Label l);
Label label_from_string(const std::string& s);

// D1: any diagnosis phrase present. D3: the candidate term present without a
// diagnosis phrase. D2: neither, and the post falls inside the collection
// window. The same token plays the D2-exclusion and D3-candidate roles.
struct AnchorRuleSet {
    std::vector<std::string> diagnosis_patterns;
    std::string exclusion_substring = "depress";
    std::string candidate_substring = "depress";
};

AnchorRuleSet default_anchor_rules();
void validate_rules(const AnchorRuleSet& rules);

enum class Split { TRAIN, VAL, TEST };

std::string to_string(Split s);
Split split_from_string(const std::string& s);

struct LabeledExample {
    Post post;
    Label label = Label::NON_DEPRESSED;
    LabelSource source = LabelSource::NONE;
    std::string normalized_text;
    int emoji_count = 0;
    int emoji_polarity_sum = 0;
};

struct LabeledCorpus {
    std::vector<LabeledExample> examples;  // sorted ascending by post id
    std::int64_t split_seed = 0;
    std::map<std::string, Split> splits;  // example id -> split; empty until split_corpus

    std::vector<const LabeledExample*> split_view(Split s) const;
};

}  // namespace depkit::corpus
