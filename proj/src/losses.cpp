#include "stancekit/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace stancekit {

LossKind loss_kind_from_string(const std::string& s) {
    if (s == "ce") return LossKind::ce;
    if (s == "supcon_pretrain_then_ce") return LossKind::supcon_pretrain_then_ce;
    if (s == "weighted") return LossKind::weighted;
    throw std::runtime_error("unknown loss kind: '" + s + "'");
}

const char* to_string(LossKind k) {
    switch (k) {
        case LossKind::ce: return "ce";
        case LossKind::supcon_pretrain_then_ce: return "supcon_pretrain_then_ce";
        case LossKind::weighted: return "weighted";
    }
    return "ce";
}

void LossConfig::validate() const {
    if (temperature <= 0.0) throw std::runtime_error("temperature must be positive");
    if (kind == LossKind::weighted &&
        std::abs(ce_weight + contrastive_weight - 1.0) > 1e-12)
        throw std::runtime_error("loss weights must sum to 1");
}

namespace {

double log_sum_exp(const Vec& v) {
    double mx = v[0];
    for (double x : v) mx = std::max(mx, x);
    double sum = 0.0;
    for (double x : v) sum += std::exp(x - mx);
    return mx + std::log(sum);
}

}  // namespace

double loss_ce(const Vec& logits, int gold) {
    if (gold < 0 || static_cast<std::size_t>(gold) >= logits.size())
        throw std::runtime_error("gold class out of range");
    return log_sum_exp(logits) - logits[static_cast<std::size_t>(gold)];
}

double loss_ce_grad(const Vec& logits, int gold, Vec& dlogits) {
    const double loss = loss_ce(logits, gold);
    const double lse = log_sum_exp(logits);
    dlogits.assign(logits.size(), 0.0);
    for (std::size_t i = 0; i < logits.size(); ++i)
        dlogits[i] = std::exp(logits[i] - lse);
    dlogits[static_cast<std::size_t>(gold)] -= 1.0;
    return loss;
}

bool has_contrastive_pairs(const std::vector<int>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) return true;
    return false;
}

namespace {

struct NormalizedBatch {
    std::vector<Vec> z;        // unit vectors
    std::vector<double> norm;  // original norms (>= tiny floor)
};

NormalizedBatch normalize_batch(const std::vector<Vec>& features) {
    NormalizedBatch nb;
    nb.z.reserve(features.size());
    nb.norm.reserve(features.size());
    for (const Vec& f : features) {
        double n = norm2(f);
        if (n < 1e-12) n = 1.0;  // zero vector stays zero
        Vec z = f;
        for (double& v : z) v /= n;
        nb.z.push_back(std::move(z));
        nb.norm.push_back(n);
    }
    return nb;
}

}  // namespace

double loss_supcon(const std::vector<Vec>& features, const std::vector<int>& labels,
                   double tau) {
    const std::size_t b = features.size();
    if (b != labels.size()) throw std::runtime_error("feature/label count mismatch");
    if (b < 2) throw std::runtime_error("contrastive loss needs a batch of at least 2");
    if (!has_contrastive_pairs(labels))
        throw std::runtime_error("degenerate contrastive batch: no anchor has a positive");

    const NormalizedBatch nb = normalize_batch(features);
    double total = 0.0;
    std::size_t anchors = 0;
    for (std::size_t i = 0; i < b; ++i) {
        std::vector<std::size_t> positives;
        for (std::size_t j = 0; j < b; ++j)
            if (j != i && labels[j] == labels[i]) positives.push_back(j);
        if (positives.empty()) continue;

        Vec sims;
        sims.reserve(b - 1);
        for (std::size_t j = 0; j < b; ++j)
            if (j != i) sims.push_back(dot(nb.z[i], nb.z[j]) / tau);
        const double lse = log_sum_exp(sims);

        double anchor_loss = 0.0;
        for (std::size_t p : positives)
            anchor_loss -= dot(nb.z[i], nb.z[p]) / tau - lse;
        total += anchor_loss / static_cast<double>(positives.size());
        ++anchors;
    }
    return total / static_cast<double>(anchors);
}

double loss_supcon_grad(const std::vector<Vec>& features, const std::vector<int>& labels,
                        double tau, std::vector<Vec>& dfeatures) {
    const std::size_t b = features.size();
    if (b != labels.size()) throw std::runtime_error("feature/label count mismatch");
    if (b < 2) throw std::runtime_error("contrastive loss needs a batch of at least 2");
    if (!has_contrastive_pairs(labels))
        throw std::runtime_error("degenerate contrastive batch: no anchor has a positive");

    const NormalizedBatch nb = normalize_batch(features);
    const std::size_t dim = features[0].size();

    std::size_t anchors = 0;
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j)
            if (j != i && labels[j] == labels[i]) {
                ++anchors;
                break;
            }

    std::vector<Vec> dz(b, Vec(dim, 0.0));
    double total = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
        std::vector<std::size_t> positives;
        for (std::size_t j = 0; j < b; ++j)
            if (j != i && labels[j] == labels[i]) positives.push_back(j);
        if (positives.empty()) continue;
        const double inv_p = 1.0 / static_cast<double>(positives.size());
        const double inv_a = 1.0 / static_cast<double>(anchors);

        // softmax over the anchor's b-1 similarity scores
        Vec sims(b, 0.0);
        double mx = -1e300;
        for (std::size_t j = 0; j < b; ++j) {
            if (j == i) continue;
            sims[j] = dot(nb.z[i], nb.z[j]) / tau;
            mx = std::max(mx, sims[j]);
        }
        double denom = 0.0;
        for (std::size_t j = 0; j < b; ++j)
            if (j != i) denom += std::exp(sims[j] - mx);
        const double lse = mx + std::log(denom);

        double anchor_loss = 0.0;
        for (std::size_t p : positives) anchor_loss -= sims[p] - lse;
        total += anchor_loss * inv_p;

        // d(anchor loss)/d(sim_ij) = softmax_i(j) - inv_p * [j is positive]
        for (std::size_t j = 0; j < b; ++j) {
            if (j == i) continue;
            double g = std::exp(sims[j] - lse);
            for (std::size_t p : positives)
                if (p == j) g -= inv_p;
            g *= inv_a / tau;
            // sim_ij = z_i . z_j
            add_scaled(dz[i], nb.z[j], g);
            add_scaled(dz[j], nb.z[i], g);
        }
    }

    // Back through normalization: df = (dz - (z . dz) z) / norm
    dfeatures.assign(b, Vec(dim, 0.0));
    for (std::size_t i = 0; i < b; ++i) {
        const double zdz = dot(nb.z[i], dz[i]);
        for (std::size_t k = 0; k < dim; ++k)
            dfeatures[i][k] = (dz[i][k] - zdz * nb.z[i][k]) / nb.norm[i];
    }
    return total / static_cast<double>(anchors);
}

}  // namespace stancekit
