#ifndef STANCEKIT_CURATION_HPP
#define STANCEKIT_CURATION_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stancekit/corpus.hpp"

namespace stancekit {

// ---------------------------------------------------------------------------
// Hashtag weak labeling
// ---------------------------------------------------------------------------

// Case-folded hashtag (without '#') -> favor/against. "neither" entries and
// case-fold duplicates are rejected at load.
class HashtagLexicon {
public:
    static HashtagLexicon from_file(const std::string& path);

    void add(const std::string& hashtag, StanceLabel stance);
    std::optional<StanceLabel> lookup(const std::string& hashtag) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, StanceLabel>& entries() const { return entries_; }

private:
    std::map<std::string, StanceLabel> entries_;
};

// Hashtags present in raw (uncleaned) text, case-folded, '#' stripped.
std::vector<std::string> extract_hashtags(const std::string& raw_text);

// All lexicon hashtags in the text agree on favor -> favor; all agree on
// against -> against; none present or mixed -> neither.
StanceLabel weak_label(const std::string& raw_text, const HashtagLexicon& lexicon);

// ---------------------------------------------------------------------------
// Stratified sampling
// ---------------------------------------------------------------------------

// Draws exactly n_total records, n_total/3 per stance stratum, deterministic
// for a given seed, output in original corpus order. Errors when n_total is
// not divisible by 3 or a stratum is short, naming the stratum and shortfall.
std::vector<TweetRecord> stratified_sample(const std::vector<TweetRecord>& records,
                                           const std::vector<StanceLabel>& weak_labels,
                                           std::size_t n_total, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Annotation aggregation
// ---------------------------------------------------------------------------

struct AnnotationBallot {
    std::string tweet_id;
    std::array<StanceLabel, 5> stance_votes;
    std::array<PremiseFlag, 5> premise_votes;
};

std::vector<AnnotationBallot> load_ballots(const std::string& path);

struct AggregationOutcome {
    bool kept = false;
    std::optional<StanceLabel> stance;    // set iff kept
    std::optional<PremiseFlag> premise;   // set iff kept
    std::string reason;                   // set iff dropped
};

// Keeps the ballot iff some stance value and some premise value each reach
// the quorum (default 4 of 5), independently per subtask.
AggregationOutcome aggregate_ballot(const AnnotationBallot& ballot, int quorum = 4);

}  // namespace stancekit

#endif
