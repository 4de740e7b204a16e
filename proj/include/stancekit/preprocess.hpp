#ifndef STANCEKIT_PREPROCESS_HPP
#define STANCEKIT_PREPROCESS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stancekit/corpus.hpp"

namespace stancekit {

enum class EmojiMode { to_text, remove, keep };

EmojiMode emoji_mode_from_string(const std::string& s);
const char* to_string(EmojiMode m);

// Maps emoji byte sequences (possibly multi-code-point, e.g. with VS16) to
// ":short_name:" replacements. Unknown emoji pass through unchanged.
class EmojiTable {
public:
    static EmojiTable from_file(const std::string& path);
    static EmojiTable empty() { return EmojiTable(); }

    void add(const std::string& emoji_utf8, const std::string& short_name);
    std::size_t size() const { return entries_.size(); }

    // Longest match at s[pos]; returns {matched byte length, ":name:"} or
    // {0, ""} when nothing in the table starts there.
    std::pair<std::size_t, std::string> match(const std::string& s, std::size_t pos) const;

private:
    std::map<std::string, std::string> entries_;  // emoji bytes -> short name
    std::size_t max_key_len_ = 0;
};

struct CleaningConfig {
    bool strip_urls = true;
    bool strip_mentions = true;
    bool strip_hashtags = true;
    EmojiMode emoji_mode = EmojiMode::to_text;
    std::size_t min_length_chars = 150;  // code points, measured on cleaned text
    bool dedup = true;
    const EmojiTable* emoji_table = nullptr;  // nullptr behaves like an empty table
};

enum class DropReason { duplicate, too_short, empty_after_cleaning };

const char* to_string(DropReason r);

// Deterministic, total cleaning pass: URLs (http/https schemes and bare t.co
// shortlinks) removed, @-tokens and #-tokens removed, emoji rewritten per the
// table and mode, whitespace collapsed and trimmed. Idempotent.
std::string clean_text(const std::string& text, const CleaningConfig& config);

struct FilterResult {
    std::vector<TweetRecord> kept;  // clean_text set, input order preserved
    std::vector<std::pair<std::string, DropReason>> dropped;
};

// Cleans every record and drops empty, short (< min_length_chars code
// points), and case-insensitive duplicate texts (first occurrence wins).
FilterResult filter_corpus(const std::vector<TweetRecord>& records,
                           const CleaningConfig& config);

}  // namespace stancekit

#endif
