#ifndef STANCEKIT_CORPUS_HPP
#define STANCEKIT_CORPUS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stancekit {

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

enum class StanceLabel { favor = 0, against = 1, neither = 2 };

constexpr int kNumStances = 3;

const char* to_string(StanceLabel s);
StanceLabel stance_from_string(const std::string& s);  // throws on unknown

enum class PremiseFlag { absent = 0, present = 1 };

inline int to_int(PremiseFlag p) { return p == PremiseFlag::present ? 1 : 0; }
PremiseFlag premise_from_int(int v);  // throws unless 0/1

// ---------------------------------------------------------------------------
// Claims
// ---------------------------------------------------------------------------

// A claim topic names the mandate a tweet is scored against and carries the
// claim sentence used for early fusion. Four topics have fixed built-in
// sentences; anything else is accepted with whatever text the registry holds.
struct ClaimTopic {
    std::string name;
    std::string claim_text;

    bool operator==(const ClaimTopic&) const = default;
};

// Built-in claim sentence for the canonical topics, empty for unknown names.
std::string canonical_claim_text(const std::string& name);

// name -> claim sentence; starts from the built-in four, extendable from a
// JSON file {"topic": "sentence", ...}.
class ClaimRegistry {
public:
    ClaimRegistry();
    static ClaimRegistry from_file(const std::string& path);

    void set(const std::string& name, const std::string& text);
    std::string text_for(const std::string& name) const;  // "" when unknown
    ClaimTopic topic(const std::string& name) const;

private:
    std::map<std::string, std::string> texts_;
};

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

struct TweetRecord {
    std::string id;
    std::string raw_text;
    std::optional<std::string> clean_text;
    ClaimTopic claim;
    std::optional<StanceLabel> stance;
    std::optional<PremiseFlag> premise;
    std::optional<std::vector<std::string>> dep_tags;
};

enum class CorpusFormat { jsonl, tsv };

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"),
          line(line_no) {}
    std::size_t line;
};

struct LoadOptions {
    CorpusFormat format = CorpusFormat::jsonl;
    // When true, a present premise on a "neither" (or unset) stance is an
    // error instead of a warning.
    bool strict = false;
};

// Loads a corpus file, preserving record order. Errors carry the 1-based line
// number. Warnings (premise set on a non-argumentative stance) are appended to
// *warnings when given.
std::vector<TweetRecord> load_corpus(const std::string& path, const LoadOptions& opts = {},
                                     std::vector<std::string>* warnings = nullptr);

void save_corpus(const std::string& path, const std::vector<TweetRecord>& records,
                 CorpusFormat format = CorpusFormat::jsonl);
std::string record_to_json_line(const TweetRecord& r);

// ---------------------------------------------------------------------------
// Split statistics
// ---------------------------------------------------------------------------

struct SplitStats {
    // claim name -> counts indexed by StanceLabel / PremiseFlag.
    std::map<std::string, std::array<std::int64_t, 3>> stance_counts;
    std::map<std::string, std::array<std::int64_t, 2>> premise_counts;
    std::int64_t total = 0;
    std::string note;  // free-form remark carried by expected-stats files

    static SplitStats from_file(const std::string& path);
    std::string to_json() const;
};

// Exact multiset tallies over fully labeled records; a record missing either
// label raises an error naming its id.
SplitStats summarize(const std::vector<TweetRecord>& records);

struct CellMismatch {
    std::string claim;
    std::string cell;  // "stance/favor", "premise/1", "total", ...
    std::int64_t expected = 0;
    std::int64_t actual = 0;
};

struct ValidationReport {
    std::vector<CellMismatch> mismatches;
    std::string note;
    bool pass() const { return mismatches.empty(); }
    std::string to_text() const;
};

// Compares summarize(records) against expected, cell by cell. Mismatches are
// report content, never exceptions.
ValidationReport validate_split(const std::vector<TweetRecord>& records,
                                const SplitStats& expected);

}  // namespace stancekit

#endif
