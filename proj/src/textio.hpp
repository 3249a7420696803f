#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace eosched {

// Shortest round-trip decimal form, the same for equal doubles on every run.
std::string format_double(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// 64-bit FNV-1a over raw bytes, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace eosched
