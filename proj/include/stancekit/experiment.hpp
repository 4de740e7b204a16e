#ifndef STANCEKIT_EXPERIMENT_HPP
#define STANCEKIT_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "stancekit/corpus.hpp"
#include "stancekit/features.hpp"
#include "stancekit/train.hpp"

namespace stancekit {

// One experiment = one (task, input mode, encoder, model, training) bundle,
// loaded from a JSON config file. The seed pins everything downstream and is
// recorded in every artifact the run writes.
struct ExperimentConfig {
    Task task = Task::stance;
    std::string model_name = "dual-view";
    std::string train_corpus;
    InputMode mode = InputMode::tweet_only;
    bool syntax = false;
    std::string claims_file;  // optional override of the built-in claim sentences
    EncoderConfig encoder;
    std::size_t dep_slots = 16;
    ModelDims model;  // input_dim derived from encoder + syntax at run time
    TrainConfig train;
    int kfold = 0;  // 0 = single model, else fold count
    std::uint64_t seed = 7;
    std::string out_dir;

    static ExperimentConfig from_file(const std::string& path);
    std::string to_json() const;
    std::string config_hash() const;

    ComposeConfig compose_config(const DepRankTable* dep_table) const;
};

// Re-resolves each record's claim sentence from the registry.
void apply_claim_registry(std::vector<TweetRecord>& records, const ClaimRegistry& registry);

// Records -> feature matrix + task labels. Records must carry clean_text and
// the task's gold label.
Dataset build_dataset(const std::vector<TweetRecord>& records, const ComposeConfig& compose,
                      Task task);

// Eval-mode feature matrix for prediction (labels not required).
std::vector<Vec> build_inputs(const std::vector<TweetRecord>& records,
                              const ComposeConfig& compose);

int label_index(const TweetRecord& record, Task task);  // throws when missing
std::string label_name(int index, Task task);

struct TrainArtifacts {
    std::vector<std::string> checkpoint_files;  // relative to out_dir
    std::string dep_table_file;                 // empty when syntax is off
    std::vector<std::string> all_files;
};

// Full training run: loads the corpus, builds the dependency table when
// syntax is on, trains (plain or k-fold), and writes checkpoints, history,
// the resolved config, and a manifest under config.out_dir.
TrainArtifacts run_training(const ExperimentConfig& config);

// Loads checkpoints and writes {id, <task>} predictions as JSONL.
void run_prediction(const ExperimentConfig& config,
                    const std::vector<std::string>& checkpoint_paths,
                    const std::string& dep_table_path, const std::string& corpus_path,
                    const std::string& out_path);

std::map<std::string, std::string> load_predictions(const std::string& path, Task task);

}  // namespace stancekit

#endif
