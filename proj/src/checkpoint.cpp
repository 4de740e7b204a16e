#include "stancekit/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"

using nlohmann::json;

namespace stancekit {

namespace {

constexpr char kMagic[4] = {'S', 'K', 'P', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
void write_le(std::ostream& out, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(std::begin(bytes), std::end(bytes));
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
    unsigned char bytes[sizeof(T)];
    in.read(reinterpret_cast<char*>(bytes), sizeof(T));
    if (!in) throw CheckpointError("checkpoint truncated");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(std::begin(bytes), std::end(bytes));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

void save_model(const std::string& path, const FusionModel& model,
                const std::string& config_hash) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CheckpointError("cannot write checkpoint: " + path);

    json tensors = json::array();
    model.for_each_tensor([&](const std::string& name, const Vec& v) {
        tensors.push_back({{"name", name}, {"size", v.size()}});
    });
    json header;
    header["format_version"] = kFormatVersion;
    header["task"] = to_string(model.task);
    header["input_dim"] = model.dims.input_dim;
    header["view_dim"] = model.dims.view_dim;
    header["hidden"] = model.dims.hidden;
    header["n_classes"] = model.dims.n_classes;
    header["dropout"] = model.dims.dropout;
    header["config_hash"] = config_hash;
    header["tensors"] = tensors;
    const std::string header_str = header.dump();

    out.write(kMagic, 4);
    write_le<std::uint32_t>(out, kFormatVersion);
    write_le<std::uint64_t>(out, header_str.size());
    out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));
    model.for_each_tensor([&](const std::string&, const Vec& v) {
        for (double x : v) write_le<double>(out, x);
    });
    if (!out) throw CheckpointError("write failed: " + path);
}

FusionModel load_model(const std::string& path, const std::optional<ModelDims>& expected,
                       std::string* config_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw CheckpointError("not a checkpoint file: " + path);
    const auto version = read_le<std::uint32_t>(in);
    if (version != kFormatVersion)
        throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
    const auto header_len = read_le<std::uint64_t>(in);
    std::string header_str(header_len, '\0');
    in.read(header_str.data(), static_cast<std::streamsize>(header_len));
    if (!in) throw CheckpointError("checkpoint truncated (header)");
    json header = json::parse(header_str, nullptr, false);
    if (header.is_discarded()) throw CheckpointError("corrupt checkpoint header");

    ModelDims dims;
    dims.input_dim = header.at("input_dim").get<std::size_t>();
    dims.view_dim = header.at("view_dim").get<std::size_t>();
    dims.hidden = header.at("hidden").get<std::size_t>();
    dims.n_classes = header.at("n_classes").get<std::size_t>();
    dims.dropout = header.at("dropout").get<double>();
    const Task task = task_from_string(header.at("task").get<std::string>());
    if (config_hash) *config_hash = header.value("config_hash", "");

    if (expected && !(dims == *expected))
        throw CheckpointError(
            "checkpoint dimensions do not match the run configuration (checkpoint: input " +
            std::to_string(dims.input_dim) + ", view " + std::to_string(dims.view_dim) +
            ", hidden " + std::to_string(dims.hidden) + "; expected: input " +
            std::to_string(expected->input_dim) + ", view " +
            std::to_string(expected->view_dim) + ", hidden " +
            std::to_string(expected->hidden) + ")");

    FusionModel model = FusionModel::init(dims, task, 0);
    std::size_t tensor_idx = 0;
    const json& tensors = header.at("tensors");
    model.for_each_tensor([&](const std::string& name, Vec& v) {
        if (tensor_idx >= tensors.size())
            throw CheckpointError("checkpoint header lists too few tensors");
        const json& spec = tensors[tensor_idx++];
        if (spec.at("name").get<std::string>() != name ||
            spec.at("size").get<std::size_t>() != v.size())
            throw CheckpointError("checkpoint tensor layout mismatch at '" + name + "'");
        for (double& x : v) x = read_le<double>(in);
    });
    return model;
}

}  // namespace stancekit
