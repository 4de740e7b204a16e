#ifndef STANCEKIT_FIXTURES_HPP
#define STANCEKIT_FIXTURES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stancekit/corpus.hpp"
#include "stancekit/curation.hpp"
#include "stancekit/report.hpp"

namespace stancekit::fixtures {

// Per-claim class counts for one split of the reference dataset.
struct SplitSpec {
    struct Row {
        std::string claim;
        std::array<std::int64_t, 3> stance;   // favor, against, neither
        std::array<std::int64_t, 2> premise;  // absent, present
    };
    std::string name;
    std::vector<Row> rows;

    SplitStats to_stats() const;
};

// The four published splits (train / validation / test / vaccines) with their
// exact per-claim stance and premise counts.
const std::vector<SplitSpec>& reference_splits();
const SplitSpec& reference_split(const std::string& name);

// Synthetic gold corpus matching the published split statistics cell for
// cell. Texts are
// keyword-bearing so trained models have signal; dep_tags are attached.
std::vector<TweetRecord> synth_split(const SplitSpec& spec, std::uint64_t seed);

// Raw, uncleaned vaccine-mandate pool for exercising the curation pipeline:
// lexicon hashtags, URLs, mentions, emoji, duplicates, and short tweets.
struct PoolFixture {
    std::vector<TweetRecord> records;
    std::vector<StanceLabel> true_stances;   // generation-time hidden labels
    std::vector<PremiseFlag> true_premises;
};

PoolFixture synth_raw_pool(std::size_t per_stance, std::uint64_t seed);

// Five-vote ballots for every pool record; most agree 4/5 or 5/5 with the
// hidden labels, a deterministic minority fails the quorum.
std::vector<AnnotationBallot> synth_ballots(const PoolFixture& pool, std::uint64_t seed);

// Stance-skewed emotion labels for a labeled corpus.
std::vector<EmotionRecord> synth_emotions(const std::vector<TweetRecord>& records,
                                          std::uint64_t seed);

}  // namespace stancekit::fixtures

#endif
