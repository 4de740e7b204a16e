#ifndef STANCEKIT_METRICS_HPP
#define STANCEKIT_METRICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stancekit/corpus.hpp"
#include "stancekit/model.hpp"

namespace stancekit {

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Square label-indexed count matrix with one-vs-rest P/R/F1 readouts.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::vector<std::string> labels);

    void add(const std::string& gold, const std::string& pred);
    std::int64_t count(const std::string& gold, const std::string& pred) const;
    std::int64_t total() const { return total_; }

    // Conventions: precision 0 when the label is never predicted, recall 0
    // when it never occurs in gold, F1 0 when precision + recall is 0.
    Prf prf(const std::string& label) const;

private:
    std::size_t index(const std::string& label) const;
    std::vector<std::string> labels_;
    std::vector<std::int64_t> counts_;  // gold-major
    std::int64_t total_ = 0;
};

Prf per_class_prf(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
                  const std::string& label);

// Classes the shared-task score averages over: favor & against for stance
// (neither is excluded), both classes for premise.
std::vector<std::string> relevant_classes(Task task);
std::vector<std::string> all_classes(Task task);

// Mean per-class F1 over the task's relevant classes for one claim's records.
double relevant_macro_f1(const std::vector<std::string>& gold,
                         const std::vector<std::string>& pred, Task task);

struct ClaimScore {
    double f1_rel = 0.0;
    std::map<std::string, Prf> per_class;  // every class, relevant or not
    std::int64_t n_records = 0;
};

struct AggregateReport {
    Task task = Task::stance;
    std::map<std::string, ClaimScore> claims;
    double aggregate_f1 = 0.0;  // unweighted mean of per-claim f1_rel
    std::size_t n_claims = 0;
    std::string model_name;
    std::string mode_name;

    std::string to_json() const;
    std::string to_csv() const;
    static AggregateReport from_json_file(const std::string& path);
};

AggregateReport aggregate_over_claims(const std::map<std::string, ClaimScore>& claims,
                                      Task task);

// Scores predictions joined on gold records grouped by claim.
AggregateReport score_predictions(const std::vector<TweetRecord>& gold,
                                  const std::map<std::string, std::string>& pred_by_id,
                                  Task task);

// ---------------------------------------------------------------------------
// Random baseline
// ---------------------------------------------------------------------------

enum class BaselineDistribution { uniform3, uniform2 };

struct BaselineResult {
    double monte_carlo_mean = 0.0;
    double plug_in_value = 0.0;
    std::map<std::string, double> plug_in_per_claim;
};

// Uniform-prediction baseline over the class distribution recorded in
// `stats`. The Monte-Carlo arm simulates seeded i.i.d. uniform predictions;
// the plug-in arm evaluates F1_r = 2 p_r q / (p_r + q) per relevant class
// (p_r: class prevalence, q: uniform hit rate) and averages per the task
// metric.
BaselineResult random_baseline(const SplitStats& stats, Task task,
                               BaselineDistribution distribution, int trials,
                               std::uint64_t seed);

}  // namespace stancekit

#endif
