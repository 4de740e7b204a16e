#ifndef STANCEKIT_FEATURES_HPP
#define STANCEKIT_FEATURES_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stancekit/corpus.hpp"

namespace stancekit {

inline constexpr std::size_t kDefaultMaxTokens = 128;
inline const char* kFusionSeparator = "<sep>";

// Case-folded tokens split on whitespace with punctuation runs kept as single
// tokens; truncated to max_tokens, never padded.
std::vector<std::string> tokenize(const std::string& text,
                                  std::size_t max_tokens = kDefaultMaxTokens);

struct EncoderConfig {
    std::size_t dim = 256;                 // feature vector width
    std::set<std::size_t> ngram_orders{1, 2};
    std::uint64_t hash_seed = 0x5eed;
    bool normalize = true;                 // unit L2 norm (zero stays zero)
    std::size_t max_tokens = kDefaultMaxTokens;

    void validate() const;
};

// Signed feature hashing over token n-grams: each n-gram lands on a hashed
// index with a hashed +/-1 sign, giving near-unbiased inner products at small
// widths.
std::vector<double> hash_ngram_encode(const std::vector<std::string>& tokens,
                                      const EncoderConfig& config);

// ---------------------------------------------------------------------------
// Dependency-rank features
// ---------------------------------------------------------------------------

// Ranks dependency tags by corpus frequency: rank 1 is the most frequent tag,
// ties broken lexicographically. Encoded per tweet as rank / (size + 1) so the
// values land in (0,1) next to unit-norm text features.
class DepRankTable {
public:
    DepRankTable() = default;

    // tag -> occurrence count over the training corpus; must be nonempty.
    static DepRankTable build(const std::map<std::string, std::int64_t>& tag_counts,
                              std::size_t slot_count = 16);
    // Serialized form is a plain {"tag": rank} object; the slot count rides
    // in the experiment config, not the file.
    static DepRankTable from_file(const std::string& path, std::size_t slot_count = 16);
    void save(const std::string& path) const;
    std::string to_json() const;

    std::size_t size() const { return ranks_.size(); }
    std::size_t slot_count() const { return slots_; }
    // 0 for unknown tags, else 1..size().
    int rank_of(const std::string& tag) const;
    const std::map<std::string, int>& ranks() const { return ranks_; }

    // First slot_count() tag ranks scaled into (0,1); unknown tags encode as
    // 0; shorter sequences are zero-padded.
    std::vector<double> encode(const std::vector<std::string>& dep_tags) const;

private:
    std::map<std::string, int> ranks_;
    std::size_t slots_ = 16;
};

std::map<std::string, std::int64_t> count_dep_tags(const std::vector<TweetRecord>& records);

// ---------------------------------------------------------------------------
// Input composition
// ---------------------------------------------------------------------------

enum class InputMode { tweet_only, tweet_plus_claim };

InputMode input_mode_from_string(const std::string& s);
const char* to_string(InputMode m);

// claim tokens + separator + tweet tokens, truncated to max_tokens with the
// claim portion never truncated. Errors when the claim plus separator alone
// exceed max_tokens.
std::vector<std::string> early_fuse(const std::string& claim_text,
                                    const std::string& tweet_text,
                                    std::size_t max_tokens = kDefaultMaxTokens);

struct ComposeConfig {
    InputMode mode = InputMode::tweet_only;
    bool syntax = false;
    EncoderConfig encoder;
    const DepRankTable* dep_table = nullptr;  // required when syntax is on
};

std::size_t composed_dim(const ComposeConfig& config);

// Record (clean_text required) -> feature vector of encoder.dim, plus
// slot_count dependency features when syntax is on.
std::vector<double> compose_input(const TweetRecord& record, const ComposeConfig& config);

}  // namespace stancekit

#endif
