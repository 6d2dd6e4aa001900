#pragma once

#include <map>
#include <string>
#include <vector>

#include "depkit/corpus/types.hpp"

namespace depkit::corpus {

// Line-delimited JSON posts with fields id, author_id, created_at (ISO-8601
// UTC), text. Groups into UserRecords sorted by author id, posts sorted by
// created_at. Errors carry 1-based line numbers.
std::vector<UserRecord> read_posts_jsonl(const std::string& path);

void write_corpus_jsonl(const LabeledCorpus& corpus, const std::string& path);
LabeledCorpus read_corpus_jsonl(const std::string& path);

void write_review_queue_jsonl(const std::vector<Post>& queue, const std::string& path);

// TSV: post_id<TAB>label, label in {depressed, non_depressed}.
std::map<std::string, Label> read_d3_labels_tsv(const std::string& path);

}  // namespace depkit::corpus
