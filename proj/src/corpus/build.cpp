#include "depkit/corpus/build.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "depkit/corpus/anchor.hpp"
#include "depkit/corpus/normalize.hpp"
#include "depkit/util/strings.hpp"

namespace depkit::corpus {

namespace {

void validate_user(const UserRecord& user) {
    for (size_t i = 0; i < user.posts.size(); ++i) {
        const Post& p = user.posts[i];
        if (p.author_id != user.author_id) {
            throw std::invalid_argument("post " + p.id + " does not belong to user " +
                                        user.author_id);
        }
        if (util::trim(p.text).empty()) {
            throw std::invalid_argument("post " + p.id + " has empty text");
        }
        if (i > 0 && user.posts[i - 1].created_at > p.created_at) {
            throw std::invalid_argument("posts of user " + user.author_id +
                                        " are not sorted by created_at");
        }
    }
}

}  // namespace

BuildResult build_corpus(std::span<const UserRecord> users, const AnchorRuleSet& rules,
                         const util::TimeWindow& d2_window, const EmojiSentimentLibrary& lib,
                         const std::map<std::string, Label>& reviewed_d3) {
    if (users.empty()) throw std::invalid_argument("build_corpus: empty user stream");
    validate_rules(rules);

    BuildResult result;
    std::set<std::string> seen_ids;

    for (const UserRecord& user : users) {
        ++result.stats.users_seen;
        if (user.posts.empty()) {
            ++result.stats.users_skipped_empty;
            continue;
        }
        validate_user(user);
        for (const Post& post : user.posts) {
            ++result.stats.posts_seen;
            if (!seen_ids.insert(post.id).second) {
                throw std::invalid_argument("duplicate post id: " + post.id);
            }
            LabelSource source = classify_anchor(post.text, post.created_at, rules, d2_window);

            LabeledExample ex;
            ex.post = post;
            ex.source = source;
            ex.normalized_text = normalize_text(post.text);
            auto annotation = annotate_emojis(post.text, lib);
            ex.emoji_count = annotation.count;
            ex.emoji_polarity_sum = annotation.polarity_sum;

            switch (source) {
                case LabelSource::D1_DEPRESSED:
                    ex.label = Label::DEPRESSED;
                    ++result.stats.d1_auto_labeled;
                    result.corpus.examples.push_back(std::move(ex));
                    break;
                case LabelSource::D2_NON_DEPRESSED:
                    ex.label = Label::NON_DEPRESSED;
                    ++result.stats.d2_auto_labeled;
                    result.corpus.examples.push_back(std::move(ex));
                    break;
                case LabelSource::D3_CANDIDATE: {
                    auto it = reviewed_d3.find(post.id);
                    if (it != reviewed_d3.end()) {
                        ex.label = it->second;
                        ++result.stats.d3_labeled;
                        result.corpus.examples.push_back(std::move(ex));
                    } else {
                        ++result.stats.d3_queued;
                        result.review_queue.push_back(post);
                    }
                    break;
                }
                case LabelSource::NONE:
                    ++result.stats.unlabeled;
                    break;
            }
        }
    }
    if (result.stats.posts_seen == 0) {
        throw std::invalid_argument("build_corpus: no posts in stream");
    }

    // deterministic ordering regardless of ingestion order
    std::sort(result.corpus.examples.begin(), result.corpus.examples.end(),
              [](const LabeledExample& a, const LabeledExample& b) {
                  return a.post.id < b.post.id;
              });
    std::sort(result.review_queue.begin(), result.review_queue.end(),
              [](const Post& a, const Post& b) { return a.id < b.id; });
    return result;
}

}  // namespace depkit::corpus
