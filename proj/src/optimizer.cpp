#include "stancekit/optimizer.hpp"

#include <cmath>

namespace stancekit {

void adamw_step(FusionModel& params, const FusionModel& grads, AdamWState& state,
                const AdamWConfig& config) {
    state.step += 1;
    const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));

    // Walk the four structures in lockstep; tensor order is fixed.
    std::vector<Vec*> p, g, m, v;
    params.for_each_tensor([&](const std::string&, Vec& t) { p.push_back(&t); });
    const_cast<FusionModel&>(grads).for_each_tensor(
        [&](const std::string&, Vec& t) { g.push_back(&t); });
    state.m.for_each_tensor([&](const std::string&, Vec& t) { m.push_back(&t); });
    state.v.for_each_tensor([&](const std::string&, Vec& t) { v.push_back(&t); });

    for (std::size_t t = 0; t < p.size(); ++t) {
        Vec& pt = *p[t];
        const Vec& gt = *g[t];
        Vec& mt = *m[t];
        Vec& vt = *v[t];
        for (std::size_t i = 0; i < pt.size(); ++i) {
            mt[i] = config.beta1 * mt[i] + (1.0 - config.beta1) * gt[i];
            vt[i] = config.beta2 * vt[i] + (1.0 - config.beta2) * gt[i] * gt[i];
            const double m_hat = mt[i] / bc1;
            const double v_hat = vt[i] / bc2;
            pt[i] -= config.learning_rate * config.weight_decay * pt[i];
            pt[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
        }
    }
}

}  // namespace stancekit
