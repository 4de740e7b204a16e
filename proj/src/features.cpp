#include "stancekit/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "stancekit/util.hpp"

using nlohmann::json;

namespace stancekit {

std::vector<std::string> tokenize(const std::string& text, std::size_t max_tokens) {
    std::vector<std::string> tokens;
    std::string current;
    bool current_is_punct = false;

    auto flush = [&]() {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };

    std::size_t i = 0;
    while (i < text.size() && tokens.size() < max_tokens) {
        std::size_t start = i;
        char32_t cp = utf8_next(text, i);
        if (is_space_cp(cp)) {
            flush();
            continue;
        }
        const bool punct = is_punct_cp(cp);
        if (!current.empty() && punct != current_is_punct) flush();
        if (tokens.size() >= max_tokens) break;
        current_is_punct = punct;
        if (cp < 0x80) {
            char c = static_cast<char>(cp);
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            current.push_back(c);
        } else {
            current.append(text, start, i - start);
        }
    }
    if (tokens.size() < max_tokens) flush();
    return tokens;
}

void EncoderConfig::validate() const {
    if (dim < 2) throw std::runtime_error("encoder dim must be >= 2");
    if (ngram_orders.empty()) throw std::runtime_error("encoder needs at least one n-gram order");
    for (std::size_t n : ngram_orders)
        if (n < 1) throw std::runtime_error("n-gram orders must be >= 1");
}

std::vector<double> hash_ngram_encode(const std::vector<std::string>& tokens,
                                      const EncoderConfig& config) {
    config.validate();
    std::vector<double> vec(config.dim, 0.0);
    std::string ngram;
    for (std::size_t n : config.ngram_orders) {
        if (tokens.size() < n) continue;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            ngram.clear();
            for (std::size_t k = 0; k < n; ++k) {
                if (k) ngram.push_back('\x1f');
                ngram += tokens[i + k];
            }
            const std::uint64_t h_index = fnv1a64(ngram, config.hash_seed);
            const std::uint64_t h_sign = fnv1a64(ngram, config.hash_seed ^ 0xabcdef12345ull);
            const double sign = (h_sign & 1) ? 1.0 : -1.0;
            vec[h_index % config.dim] += sign;
        }
    }
    if (config.normalize) {
        double norm_sq = 0.0;
        for (double v : vec) norm_sq += v * v;
        if (norm_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (double& v : vec) v *= inv;
        }
    }
    return vec;
}

DepRankTable DepRankTable::build(const std::map<std::string, std::int64_t>& tag_counts,
                                 std::size_t slot_count) {
    if (tag_counts.empty())
        throw std::runtime_error("cannot build a dependency rank table from zero tags");
    std::vector<std::pair<std::string, std::int64_t>> tags(tag_counts.begin(),
                                                           tag_counts.end());
    std::stable_sort(tags.begin(), tags.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    DepRankTable table;
    table.slots_ = slot_count;
    int rank = 1;
    for (const auto& [tag, count] : tags) table.ranks_[tag] = rank++;
    return table;
}

DepRankTable DepRankTable::from_file(const std::string& path, std::size_t slot_count) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dep rank table: " + path);
    json j = json::parse(in);
    DepRankTable table;
    table.slots_ = slot_count;
    for (auto it = j.begin(); it != j.end(); ++it)
        table.ranks_[it.key()] = it.value().get<int>();
    return table;
}

std::string DepRankTable::to_json() const {
    json j = json::object();
    for (const auto& [tag, rank] : ranks_) j[tag] = rank;
    return j.dump(2);
}

void DepRankTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dep rank table: " + path);
    out << to_json() << '\n';
}

int DepRankTable::rank_of(const std::string& tag) const {
    auto it = ranks_.find(tag);
    return it == ranks_.end() ? 0 : it->second;
}

std::vector<double> DepRankTable::encode(const std::vector<std::string>& dep_tags) const {
    std::vector<double> out(slots_, 0.0);
    const double scale = 1.0 / static_cast<double>(ranks_.size() + 1);
    const std::size_t n = std::min(slots_, dep_tags.size());
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<double>(rank_of(dep_tags[i])) * scale;
    return out;
}

std::map<std::string, std::int64_t> count_dep_tags(const std::vector<TweetRecord>& records) {
    std::map<std::string, std::int64_t> counts;
    for (const auto& r : records)
        if (r.dep_tags)
            for (const auto& tag : *r.dep_tags) counts[tag] += 1;
    return counts;
}

InputMode input_mode_from_string(const std::string& s) {
    if (s == "tweet_only") return InputMode::tweet_only;
    if (s == "tweet_plus_claim") return InputMode::tweet_plus_claim;
    throw std::runtime_error("unknown input mode: '" + s + "'");
}

const char* to_string(InputMode m) {
    return m == InputMode::tweet_only ? "tweet_only" : "tweet_plus_claim";
}

std::vector<std::string> early_fuse(const std::string& claim_text,
                                    const std::string& tweet_text,
                                    std::size_t max_tokens) {
    std::vector<std::string> fused = tokenize(claim_text, max_tokens);
    fused.push_back(kFusionSeparator);
    if (fused.size() > max_tokens)
        throw std::runtime_error("claim text alone exceeds the token limit (" +
                                 std::to_string(max_tokens) + ")");
    for (auto& tok : tokenize(tweet_text, max_tokens)) {
        if (fused.size() >= max_tokens) break;
        fused.push_back(std::move(tok));
    }
    return fused;
}

std::size_t composed_dim(const ComposeConfig& config) {
    std::size_t dim = config.encoder.dim;
    if (config.syntax) {
        if (config.dep_table == nullptr)
            throw std::runtime_error("syntax features requested without a dep rank table");
        dim += config.dep_table->slot_count();
    }
    return dim;
}

std::vector<double> compose_input(const TweetRecord& record, const ComposeConfig& config) {
    if (!record.clean_text)
        throw std::runtime_error("record '" + record.id +
                                 "' has no clean_text; run preprocessing first");
    std::vector<std::string> tokens;
    if (config.mode == InputMode::tweet_plus_claim) {
        if (record.claim.claim_text.empty())
            throw std::runtime_error("record '" + record.id + "' has claim '" +
                                     record.claim.name + "' with no claim sentence");
        tokens = early_fuse(record.claim.claim_text, *record.clean_text,
                            config.encoder.max_tokens);
    } else {
        tokens = tokenize(*record.clean_text, config.encoder.max_tokens);
    }
    std::vector<double> vec = hash_ngram_encode(tokens, config.encoder);
    if (config.syntax) {
        if (config.dep_table == nullptr)
            throw std::runtime_error("syntax features requested without a dep rank table");
        std::vector<double> dep = config.dep_table->encode(
            record.dep_tags ? *record.dep_tags : std::vector<std::string>{});
        vec.insert(vec.end(), dep.begin(), dep.end());
    }
    return vec;
}

}  // namespace stancekit
