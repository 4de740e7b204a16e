#ifndef STANCEKIT_REPORT_HPP
#define STANCEKIT_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "stancekit/corpus.hpp"
#include "stancekit/metrics.hpp"

namespace stancekit {

// One scored experiment row cell: which model, which input mode, which task,
// and the report it produced.
struct ResultEntry {
    std::string model;
    std::string mode;  // "tweets" or "tweets_claims"
    Task task = Task::stance;
    AggregateReport report;
};

// Markdown results table, one row per model, with a Tweets column pair and a
// Tweets + Claims column pair ("F1 Stance" / "F1 Premise" each). Missing
// cells render as "-".
std::string results_markdown(const std::vector<ResultEntry>& entries,
                             const std::string& title = "");

enum class ReportFormat { json, csv, markdown };

ReportFormat report_format_from_string(const std::string& s);

// One report in one format: json/csv carry the full per-class detail,
// markdown renders the single row of the results table.
std::string emit_report(const AggregateReport& report, ReportFormat format);

std::string results_csv(const std::vector<ResultEntry>& entries);

// Self-contained SVG bar chart; one bar per (label, value).
std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::pair<std::string, double>>& bars,
                          double y_max = 1.0);

// Stacked proportions: one bar per group, one segment per series entry.
std::string svg_stacked_chart(const std::string& title,
                              const std::vector<std::string>& groups,
                              const std::vector<std::string>& series,
                              const std::vector<std::vector<double>>& proportions);

// ---------------------------------------------------------------------------
// Emotion distributions
// ---------------------------------------------------------------------------

extern const std::vector<std::string> kEmotionLabels;  // Ekman six + neutral

struct EmotionRecord {
    std::string tweet_id;
    std::string emotion;
};

std::vector<EmotionRecord> load_emotions(const std::string& path);

// Per-stance proportions over the seven emotion labels; rows sum to 1.
// Every emotion record must join to a corpus id, and at least one must join.
std::map<std::string, std::map<std::string, double>> emotion_distribution(
    const std::vector<TweetRecord>& records, const std::vector<EmotionRecord>& emotions);

std::string emotion_csv(const std::map<std::string, std::map<std::string, double>>& dist);

// ---------------------------------------------------------------------------
// Output manifest
// ---------------------------------------------------------------------------

// manifest.json in `dir` listing the given files (paths relative to dir) with
// fnv1a64 content hashes. No timestamps, so reruns are byte-identical.
void write_manifest(const std::string& dir, const std::vector<std::string>& files);

}  // namespace stancekit

#endif
