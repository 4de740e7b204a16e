#ifndef STANCEKIT_LOSSES_HPP
#define STANCEKIT_LOSSES_HPP

#include <string>
#include <vector>

#include "stancekit/linalg.hpp"

namespace stancekit {

enum class LossKind { ce, supcon_pretrain_then_ce, weighted };

LossKind loss_kind_from_string(const std::string& s);
const char* to_string(LossKind k);

struct LossConfig {
    LossKind kind = LossKind::ce;
    double ce_weight = 0.7;           // used when kind == weighted
    double contrastive_weight = 0.3;  // must sum to 1 with ce_weight
    double temperature = 0.1;

    void validate() const;
};

// Negative log softmax probability of the gold class.
double loss_ce(const Vec& logits, int gold);

// Same value plus d(loss)/d(logits) = softmax - onehot(gold).
double loss_ce_grad(const Vec& logits, int gold, Vec& dlogits);

// True when at least one anchor in the batch has a same-label partner, i.e.
// the supervised contrastive loss is defined for this batch.
bool has_contrastive_pairs(const std::vector<int>& labels);

// Supervised contrastive loss over L2-normalized vectors with temperature
// tau, averaged over anchors that have at least one positive; anchors without
// positives are skipped. A batch where no anchor has a positive is an error.
double loss_supcon(const std::vector<Vec>& features, const std::vector<int>& labels,
                   double tau);

// Same value plus d(loss)/d(features[i]) (through the normalization).
double loss_supcon_grad(const std::vector<Vec>& features, const std::vector<int>& labels,
                        double tau, std::vector<Vec>& dfeatures);

inline double loss_weighted(double ce, double supcon, double ce_weight,
                            double contrastive_weight) {
    return ce_weight * ce + contrastive_weight * supcon;
}

}  // namespace stancekit

#endif
