#include "depkit/corpus/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace depkit::corpus {

namespace {

constexpr size_t kNumSplits = 3;

// Integer counts per split that sum to n, by largest remainder. Ties go to
// the earlier split.
std::array<size_t, kNumSplits> largest_remainder(size_t n,
                                                 const std::array<double, kNumSplits>& ratios) {
    std::array<size_t, kNumSplits> counts{};
    std::array<double, kNumSplits> remainders{};
    size_t assigned = 0;
    for (size_t s = 0; s < kNumSplits; ++s) {
        double ideal = static_cast<double>(n) * ratios[s];
        counts[s] = static_cast<size_t>(std::floor(ideal + 1e-12));
        remainders[s] = ideal - static_cast<double>(counts[s]);
        assigned += counts[s];
    }
    std::array<size_t, kNumSplits> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return remainders[a] > remainders[b]; });
    for (size_t k = 0; assigned < n; ++k) {
        ++counts[order[k % kNumSplits]];
        ++assigned;
    }
    return counts;
}

// Fisher-Yates driven directly by mt19937_64 output; std::shuffle is not
// portable across standard libraries.
void deterministic_shuffle(std::vector<std::string>& ids, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    for (size_t i = ids.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(gen() % i);
        std::swap(ids[i - 1], ids[j]);
    }
}

std::uint64_t mix_seed(std::int64_t seed, std::uint64_t salt) {
    std::uint64_t z = static_cast<std::uint64_t>(seed) + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

LabeledCorpus split_corpus(LabeledCorpus corpus, const SplitRatios& ratios, std::int64_t seed) {
    const std::array<double, kNumSplits> r = {ratios.train, ratios.val, ratios.test};
    for (double x : r) {
        if (!(x > 0.0)) throw std::invalid_argument("split ratios must be positive");
    }
    if (std::fabs(r[0] + r[1] + r[2] - 1.0) > 1e-9) {
        throw std::invalid_argument("split ratios must sum to 1");
    }
    if (corpus.examples.empty()) throw std::invalid_argument("cannot split an empty corpus");

    const std::array<Label, 2> class_order = {Label::DEPRESSED, Label::NON_DEPRESSED};
    std::array<std::vector<std::string>, 2> ids_by_class;
    for (const auto& ex : corpus.examples) {
        ids_by_class[ex.label == Label::DEPRESSED ? 0 : 1].push_back(ex.post.id);
    }
    for (size_t c = 0; c < class_order.size(); ++c) {
        if (ids_by_class[c].size() < kNumSplits) {
            throw std::invalid_argument("class " + to_string(class_order[c]) + " has only " +
                                        std::to_string(ids_by_class[c].size()) +
                                        " examples; need at least " +
                                        std::to_string(kNumSplits));
        }
    }

    const auto capacity = largest_remainder(corpus.examples.size(), r);
    const size_t n_first = ids_by_class[0].size();
    const double n_total = static_cast<double>(corpus.examples.size());

    // Integer rounding of n_first * ratio_s constrained to the global split
    // sizes so that BOTH classes stay within one example of their ideal
    // share. The second class gets capacity - first, so its deviation is
    // e_s - d_s with e_s the split's global rounding error and d_s this
    // class's. Flooring (d = -rem) is legal iff e_s + rem_s <= 1, ceiling
    // (d = 1 - rem) iff e_s + rem_s >= 0: units must go to the splits with
    // the largest e_s + rem_s first.
    std::array<size_t, kNumSplits> first_counts{};
    {
        std::array<double, kNumSplits> e{}, rem{};
        std::array<size_t, kNumSplits> flo{};
        size_t floor_sum = 0;
        for (size_t s = 0; s < kNumSplits; ++s) {
            const double ideal_first = static_cast<double>(n_first) * r[s];
            e[s] = static_cast<double>(capacity[s]) - n_total * r[s];
            flo[s] = static_cast<size_t>(std::floor(ideal_first + 1e-12));
            rem[s] = ideal_first - static_cast<double>(flo[s]);
            floor_sum += flo[s];
        }
        size_t units = n_first - floor_sum;
        std::array<size_t, kNumSplits> order = {0, 1, 2};
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return e[a] + rem[a] > e[b] + rem[b];
        });
        first_counts = flo;
        for (size_t k = 0; k < kNumSplits && units > 0; ++k) {
            const size_t s = order[k];
            if (rem[s] > 1e-12) {
                ++first_counts[s];
                --units;
            }
        }
        for (size_t s = 0; s < kNumSplits && units > 0; ++s) {
            // leftovers (all remainders were zero); deterministic fallback
            ++first_counts[s];
            --units;
        }
        for (size_t s = 0; s < kNumSplits; ++s) {
            if (first_counts[s] > capacity[s]) {
                throw std::logic_error("stratified rounding exceeded split capacity");
            }
            const double dev = static_cast<double>(first_counts[s]) -
                               static_cast<double>(n_first) * r[s];
            if (std::fabs(dev) > 1.0 + 1e-9 || std::fabs(e[s] - dev) > 1.0 + 1e-9) {
                throw std::logic_error("stratified rounding missed the one-example bound");
            }
        }
    }

    corpus.splits.clear();
    corpus.split_seed = seed;

    for (size_t c = 0; c < class_order.size(); ++c) {
        auto& ids = ids_by_class[c];
        std::array<size_t, kNumSplits> counts{};
        for (size_t s = 0; s < kNumSplits; ++s) {
            counts[s] = c == 0 ? first_counts[s] : capacity[s] - first_counts[s];
        }

        std::sort(ids.begin(), ids.end());
        deterministic_shuffle(ids, mix_seed(seed, c));

        size_t pos = 0;
        const std::array<Split, kNumSplits> split_order = {Split::TRAIN, Split::VAL, Split::TEST};
        for (size_t s = 0; s < kNumSplits; ++s) {
            for (size_t k = 0; k < counts[s] && pos < ids.size(); ++k, ++pos) {
                corpus.splits.emplace(ids[pos], split_order[s]);
            }
        }
    }
    return corpus;
}

}  // namespace depkit::corpus
