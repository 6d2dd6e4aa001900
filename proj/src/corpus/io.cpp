#include "depkit/corpus/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "depkit/util/jsonl.hpp"
#include "depkit/util/strings.hpp"
#include "depkit/util/time.hpp"

namespace depkit::corpus {

namespace {

using nlohmann::json;

std::string require_string(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string()) {
        throw std::runtime_error(where + ": missing string field '" + key + "'");
    }
    return j[key].get<std::string>();
}

}  // namespace

std::vector<UserRecord> read_posts_jsonl(const std::string& path) {
    std::map<std::string, UserRecord> by_author;
    util::for_each_jsonl(path, [&](size_t lineno, const json& j) {
        const std::string where = path + ":" + std::to_string(lineno);
        Post p;
        p.id = require_string(j, "id", where);
        p.author_id = require_string(j, "author_id", where);
        p.text = require_string(j, "text", where);
        if (util::trim(p.text).empty()) {
            throw std::runtime_error(where + ": post text is empty");
        }
        try {
            p.created_at = util::parse_iso8601_utc(require_string(j, "created_at", where));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        auto& user = by_author[p.author_id];
        user.author_id = p.author_id;
        user.posts.push_back(std::move(p));
    });

    std::vector<UserRecord> users;
    users.reserve(by_author.size());
    for (auto& [author, user] : by_author) {
        std::stable_sort(user.posts.begin(), user.posts.end(),
                         [](const Post& a, const Post& b) { return a.created_at < b.created_at; });
        users.push_back(std::move(user));
    }
    return users;
}

void write_corpus_jsonl(const LabeledCorpus& corpus, const std::string& path) {
    std::ostringstream out;
    out << json{{"type", "corpus_meta"}, {"split_seed", corpus.split_seed}}.dump() << '\n';
    for (const auto& ex : corpus.examples) {
        json j{{"id", ex.post.id},
               {"author_id", ex.post.author_id},
               {"created_at", util::format_iso8601_utc(ex.post.created_at)},
               {"text", ex.post.text},
               {"normalized_text", ex.normalized_text},
               {"label", to_string(ex.label)},
               {"source", to_string(ex.source)},
               {"emoji_count", ex.emoji_count},
               {"emoji_polarity_sum", ex.emoji_polarity_sum}};
        auto it = corpus.splits.find(ex.post.id);
        if (it != corpus.splits.end()) j["split"] = to_string(it->second);
        out << j.dump() << '\n';
    }
    util::write_file_atomic(path, out.str());
}

LabeledCorpus read_corpus_jsonl(const std::string& path) {
    LabeledCorpus corpus;
    std::set<std::string> seen;
    util::for_each_jsonl(path, [&](size_t lineno, const json& j) {
        const std::string where = path + ":" + std::to_string(lineno);
        if (j.contains("type") && j["type"] == "corpus_meta") {
            if (j.contains("split_seed")) corpus.split_seed = j["split_seed"].get<std::int64_t>();
            return;
        }
        LabeledExample ex;
        ex.post.id = require_string(j, "id", where);
        if (!seen.insert(ex.post.id).second) {
            throw std::runtime_error(where + ": duplicate example id '" + ex.post.id + "'");
        }
        ex.post.author_id = require_string(j, "author_id", where);
        ex.post.text = require_string(j, "text", where);
        ex.post.created_at = util::parse_iso8601_utc(require_string(j, "created_at", where));
        ex.normalized_text = require_string(j, "normalized_text", where);
        try {
            ex.label = label_from_string(require_string(j, "label", where));
            ex.source = label_source_from_string(require_string(j, "source", where));
            if (j.contains("split")) {
                corpus.splits.emplace(ex.post.id,
                                      split_from_string(j["split"].get<std::string>()));
            }
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        if (j.contains("emoji_count")) ex.emoji_count = j["emoji_count"].get<int>();
        if (j.contains("emoji_polarity_sum")) {
            ex.emoji_polarity_sum = j["emoji_polarity_sum"].get<int>();
        }
        corpus.examples.push_back(std::move(ex));
    });
    if (corpus.examples.empty()) throw std::runtime_error(path + ": corpus has no examples");
    std::sort(corpus.examples.begin(), corpus.examples.end(),
              [](const LabeledExample& a, const LabeledExample& b) {
                  return a.post.id < b.post.id;
              });
    return corpus;
}

void write_review_queue_jsonl(const std::vector<Post>& queue, const std::string& path) {
    std::ostringstream out;
    for (const auto& p : queue) {
        out << json{{"id", p.id},
                    {"author_id", p.author_id},
                    {"created_at", util::format_iso8601_utc(p.created_at)},
                    {"text", p.text}}
                   .dump()
            << '\n';
    }
    util::write_file_atomic(path, out.str());
}

std::map<std::string, Label> read_d3_labels_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open D3 labels file: " + path);
    std::map<std::string, Label> labels;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = util::split(line, '\t');
        const std::string where = path + ":" + std::to_string(lineno);
        if (fields.size() != 2) {
            throw std::runtime_error(where + ": expected post_id<TAB>label");
        }
        Label label;
        try {
            label = label_from_string(fields[1]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        if (!labels.emplace(fields[0], label).second) {
            throw std::runtime_error(where + ": duplicate post id '" + fields[0] + "'");
        }
    }
    return labels;
}

}  // namespace depkit::corpus
