#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace depkit::util {

// Seconds since the Unix epoch, UTC.
using UnixSeconds = std::int64_t;

// Accepts "YYYY-MM-DDTHH:MM:SSZ" (optionally with fractional seconds, which
// are truncated). Throws std::invalid_argument on anything else.
UnixSeconds parse_iso8601_utc(std::string_view s);

std::string format_iso8601_utc(UnixSeconds t);

// Half-open interval [start, end).
struct TimeWindow {
    UnixSeconds start = 0;
    UnixSeconds end = 0;

    bool contains(UnixSeconds t) const { return t >= start && t < end; }
};

}  // namespace depkit::util
