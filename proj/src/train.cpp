#include "stancekit/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stancekit {

void TrainConfig::validate() const {
    if (epochs < 1) throw std::runtime_error("epochs must be >= 1");
    if (batch_size < 1) throw std::runtime_error("batch size must be >= 1");
    if (learning_rate <= 0.0) throw std::runtime_error("learning rate must be positive");
    if (weight_decay < 0.0) throw std::runtime_error("weight decay must be >= 0");
    if (pretrain_epochs < 0 || pretrain_epochs > epochs)
        throw std::runtime_error("pretrain epochs must lie within [0, epochs]");
    loss.validate();
}

TrainConfig TrainConfig::desk_preset() {
    TrainConfig c;
    c.epochs = 200;
    c.batch_size = 16;
    c.learning_rate = 1e-3;
    c.weight_decay = 0.01;
    return c;
}

TrainConfig TrainConfig::published_preset() {
    TrainConfig c;
    c.epochs = 50;
    c.batch_size = 16;
    c.learning_rate = 1e-6;
    c.weight_decay = 0.01;
    return c;
}

namespace {

// Classifier part of the backward pass for one sample: dlogits -> gradients
// of linear2/linear1 and the loss gradient w.r.t. f_dual.
Vec backward_classifier(const FusionModel& model, const ForwardTrace& t,
                        const Vec& dlogits, FusionModel& grads) {
    Vec dropped = t.hidden_act;
    if (!t.dropout_mask.empty())
        for (std::size_t i = 0; i < dropped.size(); ++i) dropped[i] *= t.dropout_mask[i];

    add_outer(grads.classifier.linear2, dlogits, dropped);
    add_scaled(grads.classifier.bias2, dlogits);

    Vec d_dropped = matvec_t(model.classifier.linear2, dlogits);
    if (!t.dropout_mask.empty())
        for (std::size_t i = 0; i < d_dropped.size(); ++i) d_dropped[i] *= t.dropout_mask[i];

    Vec d_pre = d_dropped;
    for (std::size_t i = 0; i < d_pre.size(); ++i)
        if (t.hidden_pre[i] <= 0.0) d_pre[i] = 0.0;

    add_outer(grads.classifier.linear1, d_pre, t.f_dual);
    add_scaled(grads.classifier.bias1, d_pre);
    return matvec_t(model.classifier.linear1, d_pre);
}

// Fusion block and view encoders for one sample, starting from d(loss)/df_dual.
void backward_fusion(const FusionModel& model, const ForwardTrace& t, const Vec& d_fdual,
                     FusionModel& grads) {
    const std::size_t d = t.alpha.size();
    Vec d_alpha(d), d_gate(d);
    for (std::size_t i = 0; i < d; ++i)
        d_alpha[i] = d_fdual[i] * (t.f_subj[i] - t.f_obj[i]);
    for (std::size_t i = 0; i < d; ++i)
        d_gate[i] = d_alpha[i] * t.alpha[i] * (1.0 - t.alpha[i]);

    Vec concat;
    concat.reserve(2 * d);
    concat.insert(concat.end(), t.f_subj.begin(), t.f_subj.end());
    concat.insert(concat.end(), t.f_obj.begin(), t.f_obj.end());
    add_outer(grads.gate.weight, d_gate, concat);
    add_scaled(grads.gate.bias, d_gate);

    const Vec d_concat = matvec_t(model.gate.weight, d_gate);
    Vec d_subj(d), d_obj(d);
    for (std::size_t i = 0; i < d; ++i) {
        d_subj[i] = d_fdual[i] * t.alpha[i] + d_concat[i];
        d_obj[i] = d_fdual[i] * (1.0 - t.alpha[i]) + d_concat[d + i];
    }

    Vec du_subj(d), du_obj(d);
    for (std::size_t i = 0; i < d; ++i) {
        du_subj[i] = d_subj[i] * (1.0 - t.f_subj[i] * t.f_subj[i]);
        du_obj[i] = d_obj[i] * (1.0 - t.f_obj[i] * t.f_obj[i]);
    }
    add_outer(grads.view_subj.weight, du_subj, t.input);
    add_scaled(grads.view_subj.bias, du_subj);
    add_outer(grads.view_obj.weight, du_obj, t.input);
    add_scaled(grads.view_obj.bias, du_obj);
}

}  // namespace

double backward(const FusionModel& model, const std::vector<ForwardTrace>& traces,
                const std::vector<int>& golds, const LossConfig& loss,
                bool contrastive_only, FusionModel& grads) {
    if (traces.size() != golds.size())
        throw std::runtime_error("trace/gold count mismatch in backward");
    if (traces.empty()) throw std::runtime_error("empty batch in backward");
    loss.validate();
    const std::size_t b = traces.size();

    const bool use_ce = !contrastive_only;
    const bool use_con =
        contrastive_only || loss.kind == LossKind::weighted;
    const double ce_w = contrastive_only
                            ? 0.0
                            : (loss.kind == LossKind::weighted ? loss.ce_weight : 1.0);
    const double con_w = contrastive_only
                             ? 1.0
                             : (loss.kind == LossKind::weighted ? loss.contrastive_weight : 0.0);

    double ce_total = 0.0;
    double supcon_value = 0.0;
    std::vector<Vec> d_fdual_con;

    if (use_con) {
        std::vector<Vec> fduals;
        fduals.reserve(b);
        for (const auto& t : traces) fduals.push_back(t.f_dual);
        supcon_value = loss_supcon_grad(fduals, golds, loss.temperature, d_fdual_con);
    }

    for (std::size_t s = 0; s < b; ++s) {
        const ForwardTrace& t = traces[s];
        Vec d_fdual(t.f_dual.size(), 0.0);
        if (use_ce) {
            Vec dlogits;
            ce_total += loss_ce_grad(t.logits, golds[s], dlogits);
            const double scale = ce_w / static_cast<double>(b);
            for (double& v : dlogits) v *= scale;
            Vec d_from_cls = backward_classifier(model, t, dlogits, grads);
            add_scaled(d_fdual, d_from_cls);
        }
        if (use_con) add_scaled(d_fdual, d_fdual_con[s], con_w);
        backward_fusion(model, t, d_fdual, grads);
    }

    const double ce_mean = use_ce ? ce_total / static_cast<double>(b) : 0.0;
    if (contrastive_only) return supcon_value;
    if (loss.kind == LossKind::weighted)
        return loss_weighted(ce_mean, supcon_value, loss.ce_weight, loss.contrastive_weight);
    return ce_mean;
}

std::vector<int> predict(const FusionModel& model, const std::vector<Vec>& inputs) {
    std::vector<int> out;
    out.reserve(inputs.size());
    for (const Vec& x : inputs) out.push_back(argmax(forward(model, x, false).logits));
    return out;
}

std::vector<Vec> predict_proba(const FusionModel& model, const std::vector<Vec>& inputs) {
    std::vector<Vec> out;
    out.reserve(inputs.size());
    for (const Vec& x : inputs) out.push_back(softmax(forward(model, x, false).logits));
    return out;
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& gold) {
    if (pred.size() != gold.size()) throw std::runtime_error("prediction/gold size mismatch");
    if (pred.empty()) return 0.0;
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i] == gold[i]) ++hit;
    return static_cast<double>(hit) / static_cast<double>(pred.size());
}

TrainResult train(FusionModel model, const Dataset& data, const TrainConfig& config) {
    config.validate();
    if (data.size() == 0) throw std::runtime_error("cannot train on an empty dataset");
    if (data.labels.size() != data.inputs.size())
        throw std::runtime_error("dataset labels/inputs size mismatch");

    const DetRng root(config.seed);
    AdamWState opt_state = AdamWState::init(model);
    AdamWConfig opt_cfg;
    opt_cfg.learning_rate = config.learning_rate;
    opt_cfg.weight_decay = config.weight_decay;

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);

    TrainResult result;
    result.history.reserve(static_cast<std::size_t>(config.epochs));

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const bool pretrain_phase = config.loss.kind == LossKind::supcon_pretrain_then_ce &&
                                    epoch < config.pretrain_epochs;
        LossConfig phase_loss = config.loss;
        if (config.loss.kind == LossKind::supcon_pretrain_then_ce && !pretrain_phase)
            phase_loss.kind = LossKind::ce;

        DetRng shuffle_rng = root.fork(0x5f1eull ^ static_cast<std::uint64_t>(epoch));
        shuffle_rng.shuffle(order);

        double loss_sum = 0.0;
        std::size_t loss_count = 0;
        const std::size_t bs = static_cast<std::size_t>(config.batch_size);
        for (std::size_t start = 0, batch_idx = 0; start < order.size();
             start += bs, ++batch_idx) {
            const std::size_t end = std::min(order.size(), start + bs);
            std::vector<int> golds;
            std::vector<ForwardTrace> traces;
            golds.reserve(end - start);
            traces.reserve(end - start);

            DetRng dropout_rng =
                root.fork((static_cast<std::uint64_t>(epoch) << 20) ^ batch_idx ^ 0xd20b0);
            for (std::size_t i = start; i < end; ++i) {
                const std::size_t idx = order[i];
                traces.push_back(forward(model, data.inputs[idx], true, &dropout_rng));
                golds.push_back(data.labels[idx]);
            }

            const bool needs_pairs =
                pretrain_phase || phase_loss.kind == LossKind::weighted;
            bool contrastive_ok =
                golds.size() >= 2 && has_contrastive_pairs(golds);
            LossConfig batch_loss_cfg = phase_loss;
            if (needs_pairs && !contrastive_ok) {
                if (pretrain_phase) continue;  // nothing to learn from this batch
                batch_loss_cfg.kind = LossKind::ce;  // weighted falls back to its CE term
            }

            FusionModel grads = FusionModel::zeros_like(model);
            const double batch_loss =
                backward(model, traces, golds, batch_loss_cfg, pretrain_phase, grads);
            if (!std::isfinite(batch_loss))
                throw TrainError("non-finite loss at epoch " + std::to_string(epoch) +
                                 ", batch " + std::to_string(batch_idx));
            loss_sum += batch_loss * static_cast<double>(end - start);
            loss_count += end - start;
            adamw_step(model, grads, opt_state, opt_cfg);
        }

        EpochStats stats;
        stats.epoch = epoch;
        stats.loss = loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0;
        stats.accuracy = accuracy(predict(model, data.inputs), data.labels);
        result.history.push_back(stats);
    }
    result.model = std::move(model);
    return result;
}

int majority_vote(const std::vector<Vote>& votes, int n_classes) {
    if (votes.empty()) throw std::runtime_error("majority_vote needs at least one vote");
    std::vector<int> counts(static_cast<std::size_t>(n_classes), 0);
    std::vector<double> prob_sums(static_cast<std::size_t>(n_classes), 0.0);
    for (const Vote& v : votes) {
        if (v.label < 0 || v.label >= n_classes)
            throw std::runtime_error("vote label out of range");
        counts[static_cast<std::size_t>(v.label)] += 1;
        for (std::size_t c = 0; c < v.probs.size() && c < prob_sums.size(); ++c)
            prob_sums[c] += v.probs[c];
    }
    int best = 0;
    for (int c = 1; c < n_classes; ++c) {
        const std::size_t cc = static_cast<std::size_t>(c);
        const std::size_t bb = static_cast<std::size_t>(best);
        if (counts[cc] > counts[bb] ||
            (counts[cc] == counts[bb] && prob_sums[cc] > prob_sums[bb] + 1e-15))
            best = c;
    }
    return best;
}

std::vector<int> kfold_assignment(std::size_t n, int k, std::uint64_t seed) {
    if (k < 2) throw std::runtime_error("k-fold needs k >= 2");
    if (n < static_cast<std::size_t>(k))
        throw std::runtime_error("dataset smaller than the fold count");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    DetRng rng(seed ^ 0xf01d5);
    rng.shuffle(order);
    std::vector<int> fold(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        fold[order[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    return fold;
}

std::vector<FusionModel> kfold_train(const Dataset& data, int k, const ModelDims& dims,
                                     Task task, const TrainConfig& config) {
    const std::vector<int> fold = kfold_assignment(data.size(), k, config.seed);
    std::vector<FusionModel> models;
    models.reserve(static_cast<std::size_t>(k));
    for (int f = 0; f < k; ++f) {
        Dataset subset;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (fold[i] == f) continue;
            subset.ids.push_back(data.ids.empty() ? std::string() : data.ids[i]);
            subset.inputs.push_back(data.inputs[i]);
            subset.labels.push_back(data.labels[i]);
        }
        TrainConfig fold_cfg = config;
        fold_cfg.seed = DetRng(config.seed).fork(0xf01d ^ static_cast<std::uint64_t>(f)).next_u64();
        FusionModel model =
            FusionModel::init(dims, task, DetRng(fold_cfg.seed).fork(0x171).next_u64());
        models.push_back(train(std::move(model), subset, fold_cfg).model);
    }
    return models;
}

std::vector<int> ensemble_predict(const std::vector<FusionModel>& models,
                                  const std::vector<Vec>& inputs) {
    if (models.empty()) throw std::runtime_error("ensemble_predict needs at least one model");
    const int n_classes = static_cast<int>(models.front().dims.n_classes);
    std::vector<int> out;
    out.reserve(inputs.size());
    for (const Vec& x : inputs) {
        std::vector<Vote> votes;
        votes.reserve(models.size());
        for (const FusionModel& m : models) {
            Vec probs = softmax(forward(m, x, false).logits);
            votes.push_back(Vote{argmax(probs), std::move(probs)});
        }
        out.push_back(majority_vote(votes, n_classes));
    }
    return out;
}

std::vector<int> kfold_predict(const Dataset& data, int k, const ModelDims& dims,
                               Task task, const TrainConfig& config) {
    return ensemble_predict(kfold_train(data, k, dims, task, config), data.inputs);
}

}  // namespace stancekit
