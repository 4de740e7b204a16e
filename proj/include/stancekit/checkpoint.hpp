#ifndef STANCEKIT_CHECKPOINT_HPP
#define STANCEKIT_CHECKPOINT_HPP

#include <optional>
#include <string>

#include "stancekit/model.hpp"

namespace stancekit {

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Binary checkpoint: magic "SKPT", u32 format version, u64 header length, a
// JSON header (task, dims, tensor shapes, config hash), then the tensors as
// little-endian 64-bit floats in header order. Round-tripping reproduces
// bit-identical predictions.
void save_model(const std::string& path, const FusionModel& model,
                const std::string& config_hash = "");

// Loads a checkpoint; when expected dims are given, a mismatch is an error
// rather than a silently wrong model.
FusionModel load_model(const std::string& path,
                       const std::optional<ModelDims>& expected = std::nullopt,
                       std::string* config_hash = nullptr);

}  // namespace stancekit

#endif
