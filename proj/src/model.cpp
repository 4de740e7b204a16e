#include "stancekit/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stancekit {

Task task_from_string(const std::string& s) {
    if (s == "stance") return Task::stance;
    if (s == "premise") return Task::premise;
    throw std::runtime_error("unknown task: '" + s + "'");
}

const char* to_string(Task t) { return t == Task::stance ? "stance" : "premise"; }

namespace {

void xavier_init(Mat& m, DetRng rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(m.rows + m.cols));
    for (double& v : m.a) v = rng.uniform(-limit, limit);
}

}  // namespace

FusionModel FusionModel::init(const ModelDims& dims, Task task, std::uint64_t seed) {
    if (dims.input_dim == 0 || dims.view_dim == 0 || dims.hidden == 0)
        throw std::runtime_error("model dimensions must be positive");
    if (dims.dropout < 0.0 || dims.dropout >= 1.0)
        throw std::runtime_error("dropout probability must be in [0,1)");
    FusionModel m;
    m.dims = dims;
    m.dims.n_classes = static_cast<std::size_t>(num_classes(task));
    m.task = task;

    DetRng rng(seed);
    m.view_subj.weight = Mat(dims.view_dim, dims.input_dim);
    m.view_subj.bias = Vec(dims.view_dim, 0.0);
    m.view_obj.weight = Mat(dims.view_dim, dims.input_dim);
    m.view_obj.bias = Vec(dims.view_dim, 0.0);
    m.gate.weight = Mat(dims.view_dim, 2 * dims.view_dim);
    m.gate.bias = Vec(dims.view_dim, 0.0);
    m.classifier.linear1 = Mat(dims.hidden, dims.view_dim);
    m.classifier.bias1 = Vec(dims.hidden, 0.0);
    m.classifier.linear2 = Mat(m.dims.n_classes, dims.hidden);
    m.classifier.bias2 = Vec(m.dims.n_classes, 0.0);

    xavier_init(m.view_subj.weight, rng.fork(1));
    xavier_init(m.view_obj.weight, rng.fork(2));
    xavier_init(m.gate.weight, rng.fork(3));
    xavier_init(m.classifier.linear1, rng.fork(4));
    xavier_init(m.classifier.linear2, rng.fork(5));
    return m;
}

FusionModel FusionModel::zeros_like(const FusionModel& other) {
    FusionModel m = other;
    m.for_each_tensor([](const std::string&, Vec& v) {
        for (double& x : v) x = 0.0;
    });
    return m;
}

void FusionModel::for_each_tensor(const std::function<void(const std::string&, Vec&)>& fn) {
    fn("view_subj.weight", view_subj.weight.a);
    fn("view_subj.bias", view_subj.bias);
    fn("view_obj.weight", view_obj.weight.a);
    fn("view_obj.bias", view_obj.bias);
    fn("gate.weight", gate.weight.a);
    fn("gate.bias", gate.bias);
    fn("classifier.linear1", classifier.linear1.a);
    fn("classifier.bias1", classifier.bias1);
    fn("classifier.linear2", classifier.linear2.a);
    fn("classifier.bias2", classifier.bias2);
}

void FusionModel::for_each_tensor(
    const std::function<void(const std::string&, const Vec&)>& fn) const {
    const_cast<FusionModel*>(this)->for_each_tensor(
        [&fn](const std::string& name, Vec& v) { fn(name, v); });
}

Vec fusion_gate(const Vec& f_subj, const Vec& f_obj, const FusionGateParams& gate) {
    check_dim(f_obj.size(), f_subj.size(), "fusion_gate views");
    Vec concat;
    concat.reserve(f_subj.size() + f_obj.size());
    concat.insert(concat.end(), f_subj.begin(), f_subj.end());
    concat.insert(concat.end(), f_obj.begin(), f_obj.end());
    Vec pre = matvec(gate.weight, concat);
    check_dim(gate.bias.size(), pre.size(), "fusion_gate bias");
    // The gate contract is strict containment in (0,1); a saturated sigmoid
    // rounds to exactly 0 or 1 in double, so pin it one ulp inside.
    static const double kBelowOne = std::nextafter(1.0, 0.0);
    static const double kAboveZero = std::numeric_limits<double>::min();
    Vec alpha(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) {
        double a = sigmoid(pre[i] + gate.bias[i]);
        if (a >= 1.0) a = kBelowOne;
        if (a <= 0.0) a = kAboveZero;
        alpha[i] = a;
    }
    return alpha;
}

Vec fusion_combine(const Vec& f_subj, const Vec& f_obj, const Vec& alpha) {
    check_dim(f_obj.size(), f_subj.size(), "fusion_combine views");
    check_dim(alpha.size(), f_subj.size(), "fusion_combine alpha");
    Vec out(f_subj.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        // equal components pass through untouched so the identity is exact
        out[i] = f_subj[i] == f_obj[i]
                     ? f_subj[i]
                     : alpha[i] * f_subj[i] + (1.0 - alpha[i]) * f_obj[i];
    return out;
}

ForwardTrace forward(const FusionModel& model, const Vec& input, bool train_mode,
                     DetRng* rng) {
    check_dim(input.size(), model.dims.input_dim, "forward input");
    ForwardTrace t;
    t.input = input;
    t.train_mode = train_mode;

    t.f_subj = matvec(model.view_subj.weight, input);
    add_scaled(t.f_subj, model.view_subj.bias);
    for (double& v : t.f_subj) v = std::tanh(v);

    t.f_obj = matvec(model.view_obj.weight, input);
    add_scaled(t.f_obj, model.view_obj.bias);
    for (double& v : t.f_obj) v = std::tanh(v);

    t.alpha = fusion_gate(t.f_subj, t.f_obj, model.gate);
    t.f_dual = fusion_combine(t.f_subj, t.f_obj, t.alpha);

    t.hidden_pre = matvec(model.classifier.linear1, t.f_dual);
    add_scaled(t.hidden_pre, model.classifier.bias1);
    t.hidden_act = t.hidden_pre;
    for (double& v : t.hidden_act) v = v > 0.0 ? v : 0.0;

    Vec dropped = t.hidden_act;
    const double p = model.dims.dropout;
    if (train_mode && p > 0.0) {
        if (rng == nullptr)
            throw std::runtime_error("train-mode forward with dropout needs an rng");
        t.dropout_mask.resize(dropped.size());
        const double keep_scale = 1.0 / (1.0 - p);
        for (std::size_t i = 0; i < dropped.size(); ++i) {
            t.dropout_mask[i] = rng->bernoulli(p) ? 0.0 : keep_scale;
            dropped[i] *= t.dropout_mask[i];
        }
    }

    t.logits = matvec(model.classifier.linear2, dropped);
    add_scaled(t.logits, model.classifier.bias2);
    return t;
}

Vec softmax(const Vec& logits) {
    double mx = logits[0];
    for (double v : logits) mx = std::max(mx, v);
    Vec out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - mx);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

int argmax(const Vec& v) {
    int best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
    return best;
}

}  // namespace stancekit
