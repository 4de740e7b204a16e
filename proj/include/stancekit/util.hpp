#ifndef STANCEKIT_UTIL_HPP
#define STANCEKIT_UTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stancekit {

// 64-bit FNV-1a. Used for feature hashing and manifest checksums; must stay
// stable across platforms, so no std::hash anywhere.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0) {
    std::uint64_t h = 1469598103934665603ull ^ (seed * 0x9e3779b97f4a7c15ull);
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex(std::uint64_t value);

// ASCII-only case folding; non-ASCII bytes pass through untouched.
std::string ascii_lower(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

std::string trim(std::string_view s);

std::vector<std::string> split_ws(std::string_view s);

// --- minimal UTF-8 handling -------------------------------------------------
//
// Tweets are UTF-8; we never need full Unicode tables, only code point
// iteration, a code point count for the length filter, and coarse
// classification for the tokenizer.

// Decodes the code point starting at s[i]; advances i past it. Malformed
// bytes decode as U+FFFD one byte at a time.
char32_t utf8_next(std::string_view s, std::size_t& i);

void utf8_append(std::string& out, char32_t cp);

std::size_t utf8_length(std::string_view s);

bool is_space_cp(char32_t cp);
bool is_punct_cp(char32_t cp);

}  // namespace stancekit

#endif
