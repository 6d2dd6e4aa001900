#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace depkit::util {

// FNV-1a, 64-bit. Stable across platforms; used for config fingerprints.
std::uint64_t fnv1a64(std::string_view data);

std::string fnv1a64_hex(std::string_view data);

// Hex SHA-256 of a file's bytes. Throws on unreadable path.
std::string sha256_file_hex(const std::string& path);

std::string sha256_hex(std::string_view data);

}  // namespace depkit::util
