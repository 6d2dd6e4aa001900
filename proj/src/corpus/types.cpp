#include "depkit/corpus/types.hpp"

#include <stdexcept>

#include "depkit/util/strings.hpp"

namespace depkit::corpus {

std::string to_string(LabelSource s) {
    switch (s) {
        case LabelSource::D1_DEPRESSED: return "d1_depressed";
        case LabelSource::D2_NON_DEPRESSED: return "d2_non_depressed";
        case LabelSource::D3_CANDIDATE: return "d3_candidate";
        case LabelSource::NONE: return "none";
    }
    throw std::logic_error("unreachable");
}

LabelSource label_source_from_string(const std::string& s) {
    if (s == "d1_depressed") return LabelSource::D1_DEPRESSED;
    if (s == "d2_non_depressed") return LabelSource::D2_NON_DEPRESSED;
    if (s == "d3_candidate") return LabelSource::D3_CANDIDATE;
    if (s == "none") return LabelSource::NONE;
    throw std::invalid_argument("unknown label source: " + s);
}

std::string to_string(Label l) {
    return l == Label::DEPRESSED ? "depressed" : "non_depressed";
}

Label label_from_string(const std::string& s) {
    if (s == "depressed") return Label::DEPRESSED;
    if (s == "non_depressed") return Label::NON_DEPRESSED;
    throw std::invalid_argument("unknown label: " + s);
}

std::string to_string(Split s) {
    switch (s) {
        case Split::TRAIN: return "train";
        case Split::VAL: return "val";
        case Split::TEST: return "test";
    }
    throw std::logic_error("unreachable");
}

Split split_from_string(const std::string& s) {
    if (s == "train") return Split::TRAIN;
    if (s == "val") return Split::VAL;
    if (s == "test") return Split::TEST;
    throw std::invalid_argument("unknown split: " + s);
}

AnchorRuleSet default_anchor_rules() {
    AnchorRuleSet rules;
    rules.diagnosis_patterns = {
        "i'm diagnosed with depression",
        "i am diagnosed with depression",
        "i was diagnosed with depression",
    };
    return rules;
}

void validate_rules(const AnchorRuleSet& rules) {
    if (rules.diagnosis_patterns.empty()) {
        throw std::invalid_argument("anchor rules need at least one diagnosis pattern");
    }
    for (const auto& p : rules.diagnosis_patterns) {
        if (util::trim(p).empty()) {
            throw std::invalid_argument("diagnosis pattern must be non-empty");
        }
    }
    if (rules.exclusion_substring.empty() || rules.candidate_substring.empty()) {
        throw std::invalid_argument("anchor substrings must be non-empty");
    }
    if (util::to_lower_ascii(rules.exclusion_substring) !=
        util::to_lower_ascii(rules.candidate_substring)) {
        throw std::invalid_argument(
            "exclusion and candidate substrings must be the same token");
    }
}

std::vector<const LabeledExample*> LabeledCorpus::split_view(Split s) const {
    std::vector<const LabeledExample*> out;
    for (const auto& ex : examples) {
        auto it = splits.find(ex.post.id);
        if (it != splits.end() && it->second == s) out.push_back(&ex);
    }
    return out;
}

}  // namespace depkit::corpus
