#pragma once

#include <string>
#include <vector>

#include "depkit/corpus/types.hpp"
#include "depkit/infer/prompt.hpp"

namespace depkit::corpus {

struct ExportStats {
    size_t written = 0;
    size_t skipped_empty = 0;  // examples whose normalized_text is empty
};

// One record per example: {"messages":[system, user, assistant]} with the
// assistant holding the gold keyword. Serialization is canonical (sorted
// keys, no whitespace), so export -> parse -> export is byte-stable.
ExportStats export_chat_jsonl(const LabeledCorpus& corpus, Split split,
                              const infer::PromptTemplate& tmpl, const std::string& path);

struct ChatRecord {
    std::vector<infer::ChatMessage> messages;  // exactly system, user, assistant
};

// Strict schema check; errors name the offending 1-based line.
std::vector<ChatRecord> read_chat_jsonl(const std::string& path);

// Validation without materializing records (used before uploads). Returns the
// record count; throws with a line number on the first invalid line.
size_t validate_chat_file(const std::string& path);

std::string chat_record_line(const ChatRecord& record);

}  // namespace depkit::corpus
