#pragma once

#include <string>
#include <string_view>

namespace depkit::corpus {

// URLs become "<URL>", @-mentions become "<USER>", whitespace runs collapse to
// a single space, ends trimmed. Case and emoji are untouched. Total and
// idempotent.
std::string normalize_text(std::string_view raw);

}  // namespace depkit::corpus
