#ifndef STANCEKIT_TRAIN_HPP
#define STANCEKIT_TRAIN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "stancekit/losses.hpp"
#include "stancekit/model.hpp"
#include "stancekit/optimizer.hpp"

namespace stancekit {

struct Dataset {
    std::vector<std::string> ids;
    std::vector<Vec> inputs;
    std::vector<int> labels;  // class indices for the task
    std::size_t size() const { return inputs.size(); }
};

struct TrainConfig {
    int epochs = 50;
    int batch_size = 16;
    double learning_rate = 1e-6;
    double weight_decay = 0.01;
    LossConfig loss;
    // Epochs spent in the contrastive phase when loss.kind is
    // supcon_pretrain_then_ce; the remainder fine-tunes with cross-entropy.
    int pretrain_epochs = 0;
    std::uint64_t seed = 1;

    void validate() const;

    // lr 1e-3 instead of the published fine-tuning settings; suited to the
    // hashed-feature encoders this toolkit trains from scratch.
    static TrainConfig desk_preset();
    // epochs 50, batch 16, lr 1e-6, weight decay 0.01: the settings published
    // for the original fine-tuned system.
    static TrainConfig published_preset();
};

// Batch backward pass. Computes the configured loss over the traced forward
// results and accumulates analytic gradients for every parameter tensor into
// `grads` (caller zeroes). `contrastive_only` drops the cross-entropy term,
// which is how the pretrain phase runs. Returns the batch loss.
double backward(const FusionModel& model, const std::vector<ForwardTrace>& traces,
                const std::vector<int>& golds, const LossConfig& loss,
                bool contrastive_only, FusionModel& grads);

struct EpochStats {
    int epoch = 0;
    double loss = 0.0;
    double accuracy = 0.0;
};

struct TrainResult {
    FusionModel model;
    std::vector<EpochStats> history;
};

struct TrainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Seeded mini-batch training: shuffled batches, traced forwards, analytic
// backward, AdamW updates. Deterministic given (model, data, config). A
// non-finite loss aborts naming the epoch and batch.
TrainResult train(FusionModel model, const Dataset& data, const TrainConfig& config);

std::vector<int> predict(const FusionModel& model, const std::vector<Vec>& inputs);
std::vector<Vec> predict_proba(const FusionModel& model, const std::vector<Vec>& inputs);
double accuracy(const std::vector<int>& pred, const std::vector<int>& gold);

// ---------------------------------------------------------------------------
// k-fold ensembling
// ---------------------------------------------------------------------------

struct Vote {
    int label = 0;
    Vec probs;  // softmax probabilities, one per class
};

// Majority label; ties broken by highest mean probability over the tied
// classes, then by lowest class index.
int majority_vote(const std::vector<Vote>& votes, int n_classes);

// Seeded fold id (0..k-1) per record.
std::vector<int> kfold_assignment(std::size_t n, int k, std::uint64_t seed);

// One model per fold, each trained on the other k-1 folds with a derived seed.
std::vector<FusionModel> kfold_train(const Dataset& data, int k, const ModelDims& dims,
                                     Task task, const TrainConfig& config);

std::vector<int> ensemble_predict(const std::vector<FusionModel>& models,
                                  const std::vector<Vec>& inputs);

// Majority-vote predictions of the k fold models for every record in `data`.
std::vector<int> kfold_predict(const Dataset& data, int k, const ModelDims& dims,
                               Task task, const TrainConfig& config);

}  // namespace stancekit

#endif
