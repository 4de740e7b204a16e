#include "stancekit/preprocess.hpp"

#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "stancekit/util.hpp"

using nlohmann::json;

namespace stancekit {

EmojiMode emoji_mode_from_string(const std::string& s) {
    if (s == "to_text") return EmojiMode::to_text;
    if (s == "remove") return EmojiMode::remove;
    if (s == "keep") return EmojiMode::keep;
    throw std::runtime_error("unknown emoji mode: '" + s + "'");
}

const char* to_string(EmojiMode m) {
    switch (m) {
        case EmojiMode::to_text: return "to_text";
        case EmojiMode::remove: return "remove";
        case EmojiMode::keep: return "keep";
    }
    return "keep";
}

const char* to_string(DropReason r) {
    switch (r) {
        case DropReason::duplicate: return "duplicate";
        case DropReason::too_short: return "too_short";
        case DropReason::empty_after_cleaning: return "empty_after_cleaning";
    }
    return "duplicate";
}

EmojiTable EmojiTable::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open emoji table: " + path);
    json j = json::parse(in);
    EmojiTable t;
    for (auto it = j.begin(); it != j.end(); ++it) {
        t.add(it.key(), it.value().get<std::string>());
    }
    return t;
}

void EmojiTable::add(const std::string& emoji_utf8, const std::string& short_name) {
    if (emoji_utf8.empty()) throw std::runtime_error("empty emoji key");
    // Matching is only attempted at non-ASCII bytes, which is also what keeps
    // cleaning idempotent (a ":name:" replacement can never re-match).
    if (static_cast<unsigned char>(emoji_utf8[0]) < 0x80)
        throw std::runtime_error("emoji key must start with a non-ASCII byte: " + emoji_utf8);
    entries_[emoji_utf8] = short_name;
    max_key_len_ = std::max(max_key_len_, emoji_utf8.size());
}

std::pair<std::size_t, std::string> EmojiTable::match(const std::string& s,
                                                      std::size_t pos) const {
    const std::size_t cap = std::min(max_key_len_, s.size() - pos);
    for (std::size_t len = cap; len >= 1; --len) {
        auto it = entries_.find(s.substr(pos, len));
        if (it != entries_.end()) return {len, ":" + it->second + ":"};
    }
    return {0, ""};
}

namespace {

bool is_url_start(const std::string& s, std::size_t i, std::size_t& skip) {
    auto rest = std::string_view(s).substr(i);
    if (starts_with(rest, "http://") || starts_with(rest, "https://") ||
        starts_with(rest, "t.co/")) {
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        skip = j - i;
        return true;
    }
    return false;
}

// A token beginning with '@' or '#' is removed whole, matching how tweet
// handles and hashtags ride along as standalone tokens.
bool at_token_start(const std::string& s, std::size_t i) {
    if (i == 0) return true;
    return std::isspace(static_cast<unsigned char>(s[i - 1])) != 0;
}

std::string collapse_ws(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    bool pending_space = false;
    while (i < s.size()) {
        std::size_t start = i;
        char32_t cp = utf8_next(s, i);
        if (is_space_cp(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.append(s, start, i - start);
    }
    return out;
}

}  // namespace

std::string clean_text(const std::string& text, const CleaningConfig& config) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t skip = 0;
        if (config.strip_urls && is_url_start(text, i, skip)) {
            i += skip;
            out.push_back(' ');
            continue;
        }
        const char c = text[i];
        if (((c == '@' && config.strip_mentions) || (c == '#' && config.strip_hashtags)) &&
            at_token_start(text, i)) {
            std::size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
            i = j;
            out.push_back(' ');
            continue;
        }
        if (config.emoji_mode != EmojiMode::keep && config.emoji_table != nullptr &&
            static_cast<unsigned char>(c) >= 0x80) {
            auto [len, name] = config.emoji_table->match(text, i);
            if (len > 0) {
                if (config.emoji_mode == EmojiMode::to_text) {
                    out.push_back(' ');
                    out.append(name);
                }
                out.push_back(' ');
                i += len;
                continue;
            }
        }
        std::size_t start = i;
        utf8_next(text, i);
        out.append(text, start, i - start);
    }
    return collapse_ws(out);
}

FilterResult filter_corpus(const std::vector<TweetRecord>& records,
                           const CleaningConfig& config) {
    FilterResult result;
    std::unordered_set<std::string> seen;
    for (const auto& r : records) {
        const std::string cleaned = clean_text(r.raw_text, config);
        if (cleaned.empty()) {
            result.dropped.emplace_back(r.id, DropReason::empty_after_cleaning);
            continue;
        }
        if (utf8_length(cleaned) < config.min_length_chars) {
            result.dropped.emplace_back(r.id, DropReason::too_short);
            continue;
        }
        if (config.dedup && !seen.insert(ascii_lower(cleaned)).second) {
            result.dropped.emplace_back(r.id, DropReason::duplicate);
            continue;
        }
        TweetRecord kept = r;
        kept.clean_text = cleaned;
        result.kept.push_back(std::move(kept));
    }
    return result;
}

}  // namespace stancekit
