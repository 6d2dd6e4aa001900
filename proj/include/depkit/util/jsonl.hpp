#pragma once

#include <functional>
#include <string>

#include "json.hpp"

namespace depkit::util {

// Calls `fn(line_number, parsed)` for every non-empty line (1-based numbering).
// Throws std::runtime_error naming the line on parse failure.
void for_each_jsonl(const std::string& path,
                    const std::function<void(size_t, const nlohmann::json&)>& fn);

std::string read_file(const std::string& path);

// Write-then-rename so readers never observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace depkit::util
