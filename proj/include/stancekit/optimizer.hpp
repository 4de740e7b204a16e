#ifndef STANCEKIT_OPTIMIZER_HPP
#define STANCEKIT_OPTIMIZER_HPP

#include <cstdint>

#include "stancekit/model.hpp"

namespace stancekit {

// Adam with decoupled weight decay: the decay is applied straight to the
// parameters, never routed through the gradient moments.
struct AdamWConfig {
    double learning_rate = 1e-3;
    double weight_decay = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamWState {
    FusionModel m;  // first moments, same shapes as the model
    FusionModel v;  // second moments
    std::int64_t step = 0;

    static AdamWState init(const FusionModel& model) {
        return AdamWState{FusionModel::zeros_like(model), FusionModel::zeros_like(model), 0};
    }
};

void adamw_step(FusionModel& params, const FusionModel& grads, AdamWState& state,
                const AdamWConfig& config);

}  // namespace stancekit

#endif
