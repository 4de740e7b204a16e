#ifndef STANCEKIT_MODEL_HPP
#define STANCEKIT_MODEL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stancekit/linalg.hpp"
#include "stancekit/rng.hpp"

namespace stancekit {

enum class Task { stance, premise };

Task task_from_string(const std::string& s);
const char* to_string(Task t);
inline int num_classes(Task t) { return t == Task::stance ? 3 : 2; }

struct ModelDims {
    std::size_t input_dim = 0;
    std::size_t view_dim = 64;    // d: width of each view embedding
    std::size_t hidden = 32;      // h: classifier hidden width
    std::size_t n_classes = 3;
    double dropout = 0.15;

    bool operator==(const ModelDims&) const = default;
};

// One affine+tanh view encoder; the two instances are initialized
// independently and learn their own projections of the shared input.
struct ViewEncoderParams {
    Mat weight;  // view_dim x input_dim
    Vec bias;    // view_dim
};

// Produces the gate vector alpha = sigmoid(W [f_a; f_b] + b).
struct FusionGateParams {
    Mat weight;  // view_dim x 2*view_dim
    Vec bias;    // view_dim
};

struct ClassifierParams {
    Mat linear1;  // hidden x view_dim
    Vec bias1;    // hidden
    Mat linear2;  // n_classes x hidden
    Vec bias2;    // n_classes
};

struct FusionModel {
    ModelDims dims;
    Task task = Task::stance;
    ViewEncoderParams view_subj;
    ViewEncoderParams view_obj;
    FusionGateParams gate;
    ClassifierParams classifier;

    static FusionModel init(const ModelDims& dims, Task task, std::uint64_t seed);
    // Same shapes, all parameters zero; used for gradient and moment buffers.
    static FusionModel zeros_like(const FusionModel& other);

    // Visits every parameter tensor in a fixed order (checkpoint order).
    void for_each_tensor(const std::function<void(const std::string&, Vec&)>& fn);
    void for_each_tensor(const std::function<void(const std::string&, const Vec&)>& fn) const;
};

// alpha = sigmoid(W [f_subj; f_obj] + b); every component strictly in (0,1).
Vec fusion_gate(const Vec& f_subj, const Vec& f_obj, const FusionGateParams& gate);

// f_dual = alpha (.) f_subj + (1 - alpha) (.) f_obj: an elementwise convex
// combination, so each component stays within the interval of the two views.
Vec fusion_combine(const Vec& f_subj, const Vec& f_obj, const Vec& alpha);

// Everything backward needs; dropout_mask holds the kept/dropped pattern that
// was applied (empty in eval mode or when dropout is 0).
struct ForwardTrace {
    Vec input;
    Vec f_subj;        // tanh outputs
    Vec f_obj;
    Vec alpha;
    Vec f_dual;
    Vec hidden_pre;    // classifier pre-ReLU
    Vec hidden_act;    // post-ReLU, pre-dropout
    Vec dropout_mask;  // 1/(1-p) where kept, 0 where dropped
    Vec logits;
    bool train_mode = false;
};

// Inverted dropout: activations are scaled by 1/(1-p) at train time so eval
// is the identity and deterministic. The mask comes from `rng` and is
// recorded in the trace.
ForwardTrace forward(const FusionModel& model, const Vec& input, bool train_mode,
                     DetRng* rng = nullptr);

Vec softmax(const Vec& logits);
int argmax(const Vec& v);

}  // namespace stancekit

#endif
