#include "depkit/corpus/chat_format.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "depkit/util/jsonl.hpp"

namespace depkit::corpus {

namespace {

using nlohmann::json;

const std::array<std::string, 3> kRoles = {"system", "user", "assistant"};

ChatRecord record_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("messages") || !j["messages"].is_array() ||
        j["messages"].size() != 3) {
        throw std::runtime_error(where + ": expected {\"messages\": [3 entries]}");
    }
    ChatRecord rec;
    for (size_t i = 0; i < 3; ++i) {
        const json& m = j["messages"][i];
        if (!m.is_object() || !m.contains("role") || !m.contains("content") ||
            !m["role"].is_string() || !m["content"].is_string()) {
            throw std::runtime_error(where + ": message " + std::to_string(i + 1) +
                                     " must have string role and content");
        }
        if (m["role"].get<std::string>() != kRoles[i]) {
            throw std::runtime_error(where + ": message " + std::to_string(i + 1) +
                                     " must have role '" + kRoles[i] + "'");
        }
        rec.messages.push_back({m["role"].get<std::string>(), m["content"].get<std::string>()});
    }
    return rec;
}

}  // namespace

std::string chat_record_line(const ChatRecord& record) {
    json messages = json::array();
    for (const auto& m : record.messages) {
        messages.push_back(json{{"role", m.role}, {"content", m.content}});
    }
    return json{{"messages", messages}}.dump();
}

ExportStats export_chat_jsonl(const LabeledCorpus& corpus, Split split,
                              const infer::PromptTemplate& tmpl, const std::string& path) {
    infer::validate_template(tmpl);
    auto view = corpus.split_view(split);
    if (view.empty()) {
        throw std::invalid_argument("split " + to_string(split) + " is empty; nothing to export");
    }

    ExportStats stats;
    std::ostringstream out;
    for (const LabeledExample* ex : view) {
        if (ex->normalized_text.empty()) {
            ++stats.skipped_empty;
            continue;
        }
        auto prompt = infer::render_prompt(tmpl, ex->normalized_text);
        ChatRecord rec;
        rec.messages = {prompt[0], prompt[1],
                        {"assistant", infer::keyword_for(tmpl, ex->label == Label::DEPRESSED)}};
        out << chat_record_line(rec) << '\n';
        ++stats.written;
    }
    util::write_file_atomic(path, out.str());
    return stats;
}

std::vector<ChatRecord> read_chat_jsonl(const std::string& path) {
    std::vector<ChatRecord> records;
    util::for_each_jsonl(path, [&](size_t lineno, const json& j) {
        records.push_back(record_from_json(j, path + ":" + std::to_string(lineno)));
    });
    if (records.empty()) throw std::runtime_error(path + ": no records");
    return records;
}

size_t validate_chat_file(const std::string& path) {
    size_t count = 0;
    util::for_each_jsonl(path, [&](size_t lineno, const json& j) {
        record_from_json(j, path + ":" + std::to_string(lineno));
        ++count;
    });
    if (count == 0) throw std::runtime_error(path + ": file has no records");
    return count;
}

}  // namespace depkit::corpus
