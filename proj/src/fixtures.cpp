#include "stancekit/fixtures.hpp"

#include <algorithm>

#include "stancekit/rng.hpp"

namespace stancekit::fixtures {

SplitStats SplitSpec::to_stats() const {
    SplitStats stats;
    for (const auto& row : rows) {
        stats.stance_counts[row.claim] = row.stance;
        stats.premise_counts[row.claim] = row.premise;
        stats.total += row.stance[0] + row.stance[1] + row.stance[2];
    }
    return stats;
}

const std::vector<SplitSpec>& reference_splits() {
    static const std::vector<SplitSpec> splits = {
        {"train",
         {{"face_masks", {652, 324, 343}, {811, 508}},
          {"school_closures", {526, 217, 307}, {515, 535}},
          {"stay_at_home_orders", {168, 333, 686}, {899, 288}}}},
        {"validation",
         {{"face_masks", {121, 51, 36}, {126, 82}},
          {"school_closures", {91, 35, 51}, {97, 80}},
          {"stay_at_home_orders", {32, 72, 111}, {157, 58}}}},
        {"test",
         {{"face_masks", {209, 208, 260}, {424, 253}},
          {"school_closures", {215, 192, 263}, {376, 294}},
          {"stay_at_home_orders", {102, 170, 381}, {484, 169}}}},
        {"vaccines", {{"vaccine_mandates", {421, 279, 1370}, {1456, 614}}}},
    };
    return splits;
}

const SplitSpec& reference_split(const std::string& name) {
    for (const auto& s : reference_splits())
        if (s.name == name) return s;
    throw std::runtime_error("unknown reference split: '" + name + "'");
}

namespace {

const std::vector<std::string>& favor_phrases() {
    static const std::vector<std::string> v = {
        "i fully support this mandate and hope everyone complies soon",
        "protecting our community matters more than a little inconvenience",
        "please do the right thing for the vulnerable people around you",
        "this policy keeps hospitals working and saves real lives",
        "proud to follow the guidance and encourage my friends to do the same",
    };
    return v;
}

const std::vector<std::string>& against_phrases() {
    static const std::vector<std::string> v = {
        "this mandate tramples basic freedom and i will not comply",
        "government overreach has gone way too far this time",
        "coercion is not consent and the policy causes real harm",
        "my body my decision and no official will change that",
        "another rule from people who never follow their own rules",
    };
    return v;
}

const std::vector<std::string>& neither_phrases() {
    static const std::vector<std::string> v = {
        "the news keeps repeating the same story every single evening",
        "watching the updates roll in tonight while dinner gets cold",
        "numbers were reported again this afternoon across the region",
        "my timeline is full of the same debate going in circles",
        "cannot believe how long this topic has been trending already",
    };
    return v;
}

const std::vector<std::string>& premise_phrases() {
    static const std::vector<std::string> v = {
        "because hospital data shows admissions falling wherever it applies",
        "since peer reviewed studies report lower transmission under it",
        "because the published figures speak for themselves on outcomes",
        "since every region that tried it recorded measurably fewer cases",
    };
    return v;
}

const std::vector<std::string>& filler_phrases() {
    static const std::vector<std::string> v = {
        "honestly that is all i am going to say about it today",
        "just my two cents from a long week at home",
        "anyway the weather was nice for a change this morning",
        "sending good thoughts to everyone reading this far",
    };
    return v;
}

const std::vector<std::string>& claim_theme(const std::string& claim) {
    static const std::vector<std::string> masks = {"masks", "face coverings", "mask rules"};
    static const std::vector<std::string> school = {"school closures", "remote classes",
                                                    "closed classrooms"};
    static const std::vector<std::string> home = {"stay at home orders", "lockdown rules",
                                                  "home orders"};
    static const std::vector<std::string> vax = {"vaccine mandates", "vaccination rules",
                                                 "the vaccine rollout"};
    static const std::vector<std::string> other = {"the mandate", "the policy", "the rules"};
    if (claim == "face_masks") return masks;
    if (claim == "school_closures") return school;
    if (claim == "stay_at_home_orders") return home;
    if (claim == "vaccine_mandates") return vax;
    return other;
}

const std::vector<std::string>& dep_tag_pool() {
    static const std::vector<std::string> v = {"nsubj", "aux",  "amod", "root",
                                               "dobj",  "prep", "pobj", "advmod",
                                               "det",   "cc"};
    return v;
}

template <typename T>
const T& pick(const std::vector<T>& v, DetRng& rng) {
    return v[rng.bounded(v.size())];
}

std::string synth_text(const std::string& claim, StanceLabel stance, PremiseFlag premise,
                       DetRng& rng) {
    const auto& stance_bank = stance == StanceLabel::favor    ? favor_phrases()
                              : stance == StanceLabel::against ? against_phrases()
                                                               : neither_phrases();
    std::string text = "talking about " + pick(claim_theme(claim), rng) + " again, " +
                       pick(stance_bank, rng);
    text += ", " + pick(stance_bank, rng);
    if (premise == PremiseFlag::present)
        text += " " + pick(premise_phrases(), rng);
    else
        text += " " + pick(filler_phrases(), rng);
    while (text.size() < 160) text += " " + pick(filler_phrases(), rng);
    return text;
}

std::vector<std::string> synth_dep_tags(DetRng& rng) {
    std::vector<std::string> tags;
    const std::size_t n = 3 + rng.bounded(6);
    for (std::size_t i = 0; i < n; ++i) tags.push_back(pick(dep_tag_pool(), rng));
    return tags;
}

}  // namespace

std::vector<TweetRecord> synth_split(const SplitSpec& spec, std::uint64_t seed) {
    std::vector<TweetRecord> records;
    DetRng root(seed);
    std::size_t serial = 0;
    for (const auto& row : spec.rows) {
        // Premise=present goes to favor/against records first, keeping the
        // "a premise argues a side" rule intact; every reference row has
        // favor+against >= present so this always fits.
        std::vector<std::pair<StanceLabel, PremiseFlag>> cells;
        std::int64_t premise_left = row.premise[1];
        for (int s = 0; s < 3; ++s) {
            for (std::int64_t k = 0; k < row.stance[static_cast<std::size_t>(s)]; ++k) {
                const auto stance = static_cast<StanceLabel>(s);
                PremiseFlag premise = PremiseFlag::absent;
                if (stance != StanceLabel::neither && premise_left > 0) {
                    premise = PremiseFlag::present;
                    --premise_left;
                }
                cells.emplace_back(stance, premise);
            }
        }
        for (const auto& [stance, premise] : cells) {
            DetRng rng = root.fork(0x9e37ull ^ (serial * 0x10001ull));
            TweetRecord r;
            r.id = spec.name + "-" + std::to_string(serial++);
            r.claim = ClaimTopic{row.claim, canonical_claim_text(row.claim)};
            r.stance = stance;
            r.premise = premise;
            r.raw_text = synth_text(row.claim, stance, premise, rng);
            r.clean_text = r.raw_text;  // synthetic text is already clean
            r.dep_tags = synth_dep_tags(rng);
            records.push_back(std::move(r));
        }
    }
    return records;
}

namespace {

const std::vector<std::string>& favor_hashtags() {
    static const std::vector<std::string> v = {"#GetVaccinated", "#VaccinesWork",
                                               "#VaxToTheMax", "#VaccinesSaveLives"};
    return v;
}

const std::vector<std::string>& against_hashtags() {
    static const std::vector<std::string> v = {"#NoVaccineMandates", "#NoVax",
                                               "#mybodymychoice", "#NoVaccinePassports"};
    return v;
}

}  // namespace

PoolFixture synth_raw_pool(std::size_t per_stance, std::uint64_t seed) {
    PoolFixture pool;
    DetRng root(seed ^ 0x9001ull);
    std::size_t serial = 0;
    auto push = [&](StanceLabel stance, PremiseFlag premise, std::string text) {
        TweetRecord r;
        r.id = "pool-" + std::to_string(serial);
        r.claim = ClaimTopic{"vaccine_mandates", canonical_claim_text("vaccine_mandates")};
        r.raw_text = std::move(text);
        DetRng rng = root.fork(0xdead ^ serial);
        r.dep_tags = synth_dep_tags(rng);
        pool.records.push_back(std::move(r));
        pool.true_stances.push_back(stance);
        pool.true_premises.push_back(premise);
        ++serial;
    };

    for (int s = 0; s < 3; ++s) {
        const auto stance = static_cast<StanceLabel>(s);
        for (std::size_t i = 0; i < per_stance; ++i) {
            DetRng rng = root.fork((static_cast<std::uint64_t>(s) << 32) ^ i);
            const PremiseFlag premise = (stance != StanceLabel::neither && i % 2 == 0)
                                            ? PremiseFlag::present
                                            : PremiseFlag::absent;
            std::string text = synth_text("vaccine_mandates", stance, premise, rng);
            // decorate with the raw-tweet noise the cleaner must strip
            if (stance == StanceLabel::favor) text += " " + pick(favor_hashtags(), rng);
            if (stance == StanceLabel::against) text += " " + pick(against_hashtags(), rng);
            if (i % 3 == 0) text += " https://t.co/x" + std::to_string(i);
            if (i % 4 == 0) text += " @newsdesk" + std::to_string(i % 7);
            if (i % 5 == 0) text += " \xF0\x9F\x92\x89";  // syringe emoji
            push(stance, premise, std::move(text));
        }
    }

    // noise: exact duplicates of earlier tweets and too-short tweets
    const std::size_t dups = std::max<std::size_t>(2, per_stance / 20);
    for (std::size_t i = 0; i < dups && i < pool.records.size(); ++i) {
        const auto src = pool.records[i * 3 % pool.records.size()];
        push(pool.true_stances[i * 3 % pool.true_stances.size()],
             pool.true_premises[i * 3 % pool.true_premises.size()], src.raw_text);
    }
    for (std::size_t i = 0; i < dups; ++i)
        push(StanceLabel::neither, PremiseFlag::absent,
             "too short to keep #GetVaccinated no. " + std::to_string(i));
    return pool;
}

std::vector<AnnotationBallot> synth_ballots(const PoolFixture& pool, std::uint64_t seed) {
    std::vector<AnnotationBallot> ballots;
    DetRng root(seed ^ 0xba110ull);
    for (std::size_t i = 0; i < pool.records.size(); ++i) {
        DetRng rng = root.fork(i);
        AnnotationBallot b;
        b.tweet_id = pool.records[i].id;
        const StanceLabel truth = pool.true_stances[i];
        const PremiseFlag premise = pool.true_premises[i];
        const StanceLabel off_stance =
            truth == StanceLabel::favor ? StanceLabel::against : StanceLabel::favor;
        const int style = static_cast<int>(rng.bounded(10));
        for (std::size_t v = 0; v < 5; ++v) {
            b.stance_votes[v] = truth;
            b.premise_votes[v] = premise;
        }
        if (style >= 6) b.stance_votes[4] = off_stance;  // 4/5 agreement, still kept
        if (style == 9) {                                // quorum failure: 3/2 split
            b.stance_votes[3] = off_stance;
            b.stance_votes[4] = off_stance;
        }
        if (style >= 8)
            b.premise_votes[0] =
                premise == PremiseFlag::present ? PremiseFlag::absent : PremiseFlag::present;
        ballots.push_back(std::move(b));
    }
    return ballots;
}

std::vector<EmotionRecord> synth_emotions(const std::vector<TweetRecord>& records,
                                          std::uint64_t seed) {
    std::vector<EmotionRecord> out;
    DetRng root(seed ^ 0xe307ull);
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].stance) continue;
        DetRng rng = root.fork(i);
        // opposition skews angry, support skews joyful, neither stays neutral
        std::vector<std::string> bank;
        switch (*records[i].stance) {
            case StanceLabel::against: bank = {"anger", "anger", "fear", "disgust"}; break;
            case StanceLabel::favor: bank = {"joy", "joy", "neutral", "surprise"}; break;
            case StanceLabel::neither: bank = {"neutral", "neutral", "sadness", "surprise"}; break;
        }
        out.push_back({records[i].id, bank[rng.bounded(bank.size())]});
    }
    return out;
}

}  // namespace stancekit::fixtures
