#include "stancekit/curation.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "stancekit/rng.hpp"
#include "stancekit/util.hpp"

using nlohmann::json;

namespace stancekit {

HashtagLexicon HashtagLexicon::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open hashtag lexicon: " + path);
    json j = json::parse(in);
    HashtagLexicon lex;
    for (auto it = j.begin(); it != j.end(); ++it) {
        lex.add(it.key(), stance_from_string(it.value().get<std::string>()));
    }
    return lex;
}

void HashtagLexicon::add(const std::string& hashtag, StanceLabel stance) {
    if (stance == StanceLabel::neither)
        throw std::runtime_error("lexicon hashtag '" + hashtag + "' maps to neither");
    std::string key = ascii_lower(hashtag);
    if (!key.empty() && key.front() == '#') key.erase(0, 1);
    if (key.empty()) throw std::runtime_error("empty hashtag in lexicon");
    if (entries_.count(key))
        throw std::runtime_error("duplicate hashtag after case folding: '" + key + "'");
    entries_[key] = stance;
}

std::optional<StanceLabel> HashtagLexicon::lookup(const std::string& hashtag) const {
    std::string key = ascii_lower(hashtag);
    if (!key.empty() && key.front() == '#') key.erase(0, 1);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> extract_hashtags(const std::string& raw_text) {
    std::vector<std::string> tags;
    std::size_t i = 0;
    auto is_tag_char = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_';
    };
    while (i < raw_text.size()) {
        if (raw_text[i] == '#') {
            std::size_t j = i + 1;
            while (j < raw_text.size() && is_tag_char(raw_text[j])) ++j;
            if (j > i + 1) tags.push_back(ascii_lower(raw_text.substr(i + 1, j - i - 1)));
            i = j;
        } else {
            ++i;
        }
    }
    return tags;
}

StanceLabel weak_label(const std::string& raw_text, const HashtagLexicon& lexicon) {
    bool any_favor = false, any_against = false;
    for (const auto& tag : extract_hashtags(raw_text)) {
        if (auto stance = lexicon.lookup(tag)) {
            if (*stance == StanceLabel::favor) any_favor = true;
            if (*stance == StanceLabel::against) any_against = true;
        }
    }
    if (any_favor && !any_against) return StanceLabel::favor;
    if (any_against && !any_favor) return StanceLabel::against;
    return StanceLabel::neither;  // none or conflicting
}

std::vector<TweetRecord> stratified_sample(const std::vector<TweetRecord>& records,
                                           const std::vector<StanceLabel>& weak_labels,
                                           std::size_t n_total, std::uint64_t seed) {
    if (weak_labels.size() != records.size())
        throw std::runtime_error("weak label count does not match record count");
    if (n_total % 3 != 0)
        throw std::runtime_error("sample size must be divisible by 3, got " +
                                 std::to_string(n_total));
    const std::size_t quota = n_total / 3;

    std::array<std::vector<std::size_t>, 3> strata;
    for (std::size_t i = 0; i < records.size(); ++i)
        strata[static_cast<std::size_t>(weak_labels[i])].push_back(i);

    for (int s = 0; s < 3; ++s) {
        const auto& stratum = strata[static_cast<std::size_t>(s)];
        if (stratum.size() < quota)
            throw std::runtime_error(
                std::string("stratum '") + to_string(static_cast<StanceLabel>(s)) +
                "' short by " + std::to_string(quota - stratum.size()) + " records (" +
                std::to_string(stratum.size()) + " available, " + std::to_string(quota) +
                " needed)");
    }

    std::vector<std::size_t> picked;
    picked.reserve(n_total);
    DetRng rng(seed);
    for (int s = 0; s < 3; ++s) {
        auto stratum = strata[static_cast<std::size_t>(s)];
        DetRng stratum_rng = rng.fork(static_cast<std::uint64_t>(s));
        stratum_rng.shuffle(stratum);
        picked.insert(picked.end(), stratum.begin(), stratum.begin() + static_cast<long>(quota));
    }
    std::sort(picked.begin(), picked.end());

    std::vector<TweetRecord> out;
    out.reserve(n_total);
    for (std::size_t idx : picked) out.push_back(records[idx]);
    return out;
}

std::vector<AnnotationBallot> load_ballots(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ballots file: " + path);
    std::vector<AnnotationBallot> ballots;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseError("malformed ballot JSON", line_no);
        AnnotationBallot b;
        try {
            b.tweet_id = j.at("tweet_id").get<std::string>();
            const auto sv = j.at("stance_votes").get<std::vector<std::string>>();
            const auto pv = j.at("premise_votes").get<std::vector<int>>();
            if (sv.size() != 5 || pv.size() != 5)
                throw std::runtime_error("ballots require exactly 5 votes per subtask");
            for (std::size_t i = 0; i < 5; ++i) {
                b.stance_votes[i] = stance_from_string(sv[i]);
                b.premise_votes[i] = premise_from_int(pv[i]);
            }
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        ballots.push_back(std::move(b));
    }
    return ballots;
}

AggregationOutcome aggregate_ballot(const AnnotationBallot& ballot, int quorum) {
    if (quorum < 3 || quorum > 5)
        throw std::runtime_error("quorum must be in [3,5], got " + std::to_string(quorum));

    std::array<int, 3> stance_tally{};
    for (StanceLabel v : ballot.stance_votes)
        stance_tally[static_cast<std::size_t>(v)] += 1;
    std::array<int, 2> premise_tally{};
    for (PremiseFlag v : ballot.premise_votes)
        premise_tally[static_cast<std::size_t>(to_int(v))] += 1;

    // With 5 votes and quorum >= 3, at most one value can reach the quorum.
    std::optional<StanceLabel> stance;
    for (int s = 0; s < 3; ++s)
        if (stance_tally[static_cast<std::size_t>(s)] >= quorum)
            stance = static_cast<StanceLabel>(s);
    std::optional<PremiseFlag> premise;
    for (int p = 0; p < 2; ++p)
        if (premise_tally[static_cast<std::size_t>(p)] >= quorum)
            premise = premise_from_int(p);

    AggregationOutcome out;
    if (stance && premise) {
        out.kept = true;
        out.stance = stance;
        out.premise = premise;
    } else if (!stance && !premise) {
        out.reason = "stance and premise quorum not met";
    } else if (!stance) {
        out.reason = "stance quorum not met";
    } else {
        out.reason = "premise quorum not met";
    }
    return out;
}

}  // namespace stancekit
