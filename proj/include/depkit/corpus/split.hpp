#pragma once

#include <array>
#include <cstdint>

#include "depkit/corpus/types.hpp"

namespace depkit::corpus {

struct SplitRatios {
    double train = 0.8;
    double val = 0.1;
    double test = 0.1;
};

// Deterministic stratified assignment:
//   1. global split sizes by largest remainder over n * ratio (ties favor the
//      earlier of TRAIN, VAL, TEST);
//   2. per-class counts are the integer rounding of n_class * ratio that
//      preserves the global sizes exactly; every class lands within one
//      example of its ideal share in every split;
//   3. within a class, ids are sorted, shuffled with a generator seeded from
//      (seed, class index), and dealt to TRAIN, then VAL, then TEST.
// Identical inputs yield an identical split map. Throws when ratios do not
// sum to 1, a ratio is non-positive, or a class has fewer examples than
// splits (error names the class).
LabeledCorpus split_corpus(LabeledCorpus corpus, const SplitRatios& ratios, std::int64_t seed);

}  // namespace depkit::corpus
