#include "stancekit/experiment.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "stancekit/checkpoint.hpp"
#include "stancekit/report.hpp"
#include "stancekit/util.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace stancekit {

namespace {

void apply_train_overrides(TrainConfig& cfg, const json& j) {
    if (j.contains("epochs")) cfg.epochs = j["epochs"].get<int>();
    if (j.contains("batch_size")) cfg.batch_size = j["batch_size"].get<int>();
    if (j.contains("learning_rate")) cfg.learning_rate = j["learning_rate"].get<double>();
    if (j.contains("weight_decay")) cfg.weight_decay = j["weight_decay"].get<double>();
    if (j.contains("loss")) cfg.loss.kind = loss_kind_from_string(j["loss"].get<std::string>());
    if (j.contains("ce_weight")) cfg.loss.ce_weight = j["ce_weight"].get<double>();
    if (j.contains("contrastive_weight"))
        cfg.loss.contrastive_weight = j["contrastive_weight"].get<double>();
    if (j.contains("temperature")) cfg.loss.temperature = j["temperature"].get<double>();
    if (j.contains("pretrain_epochs")) cfg.pretrain_epochs = j["pretrain_epochs"].get<int>();
    if (cfg.loss.kind == LossKind::supcon_pretrain_then_ce && cfg.pretrain_epochs == 0)
        cfg.pretrain_epochs = cfg.epochs / 2;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open experiment config: " + path);
    json j = json::parse(in);

    ExperimentConfig cfg;
    cfg.task = task_from_string(j.at("task").get<std::string>());
    cfg.model_name = j.value("model_name", std::string("dual-view"));
    cfg.train_corpus = j.value("train_corpus", std::string());
    if (j.contains("mode")) cfg.mode = input_mode_from_string(j["mode"].get<std::string>());
    cfg.syntax = j.value("syntax", false);
    cfg.claims_file = j.value("claims_file", std::string());
    cfg.dep_slots = j.value("dep_slots", std::size_t{16});
    cfg.kfold = j.value("kfold", 0);
    cfg.seed = j.value("seed", std::uint64_t{7});
    cfg.out_dir = j.value("out_dir", std::string());

    if (j.contains("encoder")) {
        const json& e = j["encoder"];
        if (e.contains("dim")) cfg.encoder.dim = e["dim"].get<std::size_t>();
        if (e.contains("ngram_orders")) {
            cfg.encoder.ngram_orders.clear();
            for (const auto& n : e["ngram_orders"])
                cfg.encoder.ngram_orders.insert(n.get<std::size_t>());
        }
        if (e.contains("hash_seed")) cfg.encoder.hash_seed = e["hash_seed"].get<std::uint64_t>();
        if (e.contains("normalize")) cfg.encoder.normalize = e["normalize"].get<bool>();
        if (e.contains("max_tokens")) cfg.encoder.max_tokens = e["max_tokens"].get<std::size_t>();
    } else {
        cfg.encoder.dim = 64;  // desk-scale default
    }

    cfg.model.view_dim = 64;
    cfg.model.hidden = 32;
    if (j.contains("model")) {
        const json& m = j["model"];
        if (m.contains("view_dim")) cfg.model.view_dim = m["view_dim"].get<std::size_t>();
        if (m.contains("hidden")) cfg.model.hidden = m["hidden"].get<std::size_t>();
        if (m.contains("dropout")) cfg.model.dropout = m["dropout"].get<double>();
    }

    cfg.train = TrainConfig::desk_preset();
    if (j.contains("train")) {
        const json& t = j["train"];
        const std::string preset = t.value("preset", std::string("desk"));
        if (preset == "published") {
            cfg.train = TrainConfig::published_preset();
            cfg.model.view_dim = 1024;
            cfg.model.hidden = 1024;
            if (j.contains("model")) {
                const json& m = j["model"];
                if (m.contains("view_dim")) cfg.model.view_dim = m["view_dim"].get<std::size_t>();
                if (m.contains("hidden")) cfg.model.hidden = m["hidden"].get<std::size_t>();
            }
        } else if (preset != "desk") {
            throw std::runtime_error("unknown train preset (desk | published): '" + preset +
                                     "'");
        }
        apply_train_overrides(cfg.train, t);
    }
    cfg.train.seed = cfg.seed;
    cfg.train.validate();
    cfg.encoder.validate();
    return cfg;
}

std::string ExperimentConfig::to_json() const {
    json e;
    e["dim"] = encoder.dim;
    e["ngram_orders"] = encoder.ngram_orders;
    e["hash_seed"] = encoder.hash_seed;
    e["normalize"] = encoder.normalize;
    e["max_tokens"] = encoder.max_tokens;

    json m;
    m["view_dim"] = model.view_dim;
    m["hidden"] = model.hidden;
    m["dropout"] = model.dropout;

    json t;
    t["epochs"] = train.epochs;
    t["batch_size"] = train.batch_size;
    t["learning_rate"] = train.learning_rate;
    t["weight_decay"] = train.weight_decay;
    t["loss"] = to_string(train.loss.kind);
    t["ce_weight"] = train.loss.ce_weight;
    t["contrastive_weight"] = train.loss.contrastive_weight;
    t["temperature"] = train.loss.temperature;
    t["pretrain_epochs"] = train.pretrain_epochs;

    json j;
    j["task"] = to_string(task);
    j["model_name"] = model_name;
    j["train_corpus"] = train_corpus;
    j["mode"] = to_string(mode);
    j["syntax"] = syntax;
    if (!claims_file.empty()) j["claims_file"] = claims_file;
    j["encoder"] = e;
    j["dep_slots"] = dep_slots;
    j["model"] = m;
    j["train"] = t;
    j["kfold"] = kfold;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    return j.dump(2);
}

std::string ExperimentConfig::config_hash() const {
    // out_dir is where results land, not what they are; keep it out of the
    // hash so the same experiment hashes the same wherever it runs
    json j = json::parse(to_json());
    j.erase("out_dir");
    return to_hex(fnv1a64(j.dump()));
}

ComposeConfig ExperimentConfig::compose_config(const DepRankTable* dep_table) const {
    ComposeConfig cc;
    cc.mode = mode;
    cc.syntax = syntax;
    cc.encoder = encoder;
    cc.dep_table = dep_table;
    return cc;
}

void apply_claim_registry(std::vector<TweetRecord>& records, const ClaimRegistry& registry) {
    for (auto& r : records) r.claim = registry.topic(r.claim.name);
}

int label_index(const TweetRecord& record, Task task) {
    if (task == Task::stance) {
        if (!record.stance)
            throw std::runtime_error("record '" + record.id + "' is missing a stance label");
        return static_cast<int>(*record.stance);
    }
    if (!record.premise)
        throw std::runtime_error("record '" + record.id + "' is missing a premise label");
    return to_int(*record.premise);
}

std::string label_name(int index, Task task) {
    if (task == Task::stance) return to_string(static_cast<StanceLabel>(index));
    return std::to_string(index);
}

Dataset build_dataset(const std::vector<TweetRecord>& records, const ComposeConfig& compose,
                      Task task) {
    Dataset data;
    data.ids.reserve(records.size());
    data.inputs.reserve(records.size());
    data.labels.reserve(records.size());
    for (const auto& r : records) {
        data.ids.push_back(r.id);
        data.inputs.push_back(compose_input(r, compose));
        data.labels.push_back(label_index(r, task));
    }
    return data;
}

std::vector<Vec> build_inputs(const std::vector<TweetRecord>& records,
                              const ComposeConfig& compose) {
    std::vector<Vec> inputs;
    inputs.reserve(records.size());
    for (const auto& r : records) inputs.push_back(compose_input(r, compose));
    return inputs;
}

namespace {

void write_history(const std::string& path, const std::vector<EpochStats>& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write history: " + path);
    for (const auto& e : history) {
        json j;
        j["epoch"] = e.epoch;
        j["loss"] = e.loss;
        j["accuracy"] = e.accuracy;
        out << j.dump() << '\n';
    }
}

std::vector<TweetRecord> load_records_for(const ExperimentConfig& config,
                                          const std::string& path) {
    auto records = load_corpus(path);
    if (!config.claims_file.empty())
        apply_claim_registry(records, ClaimRegistry::from_file(config.claims_file));
    // Records straight from a gold fixture may have no clean_text; fall back
    // to the raw text so ad-hoc corpora remain usable.
    for (auto& r : records)
        if (!r.clean_text) r.clean_text = r.raw_text;
    return records;
}

}  // namespace

TrainArtifacts run_training(const ExperimentConfig& config) {
    if (config.train_corpus.empty())
        throw std::runtime_error("experiment config has no train_corpus");
    if (config.out_dir.empty()) throw std::runtime_error("experiment config has no out_dir");
    fs::create_directories(config.out_dir);

    auto records = load_records_for(config, config.train_corpus);

    TrainArtifacts artifacts;
    DepRankTable dep_table;
    const DepRankTable* dep_ptr = nullptr;
    if (config.syntax) {
        dep_table = DepRankTable::build(count_dep_tags(records), config.dep_slots);
        dep_ptr = &dep_table;
        artifacts.dep_table_file = "dep_table.json";
        dep_table.save((fs::path(config.out_dir) / artifacts.dep_table_file).string());
        artifacts.all_files.push_back(artifacts.dep_table_file);
    }

    const ComposeConfig compose = config.compose_config(dep_ptr);
    const Dataset data = build_dataset(records, compose, config.task);

    ModelDims dims = config.model;
    dims.input_dim = composed_dim(compose);
    dims.n_classes = static_cast<std::size_t>(num_classes(config.task));

    const std::string hash = config.config_hash();
    if (config.kfold > 0) {
        const auto models =
            kfold_train(data, config.kfold, dims, config.task, config.train);
        for (std::size_t f = 0; f < models.size(); ++f) {
            const std::string name = "fold" + std::to_string(f) + ".ckpt";
            save_model((fs::path(config.out_dir) / name).string(), models[f], hash);
            artifacts.checkpoint_files.push_back(name);
            artifacts.all_files.push_back(name);
        }
    } else {
        FusionModel model =
            FusionModel::init(dims, config.task, DetRng(config.seed).fork(0x171).next_u64());
        TrainResult result = train(std::move(model), data, config.train);
        save_model((fs::path(config.out_dir) / "model.ckpt").string(), result.model, hash);
        write_history((fs::path(config.out_dir) / "history.jsonl").string(), result.history);
        artifacts.checkpoint_files.push_back("model.ckpt");
        artifacts.all_files.push_back("model.ckpt");
        artifacts.all_files.push_back("history.jsonl");
    }

    {
        std::ofstream out(fs::path(config.out_dir) / "config.json");
        out << config.to_json() << '\n';
        artifacts.all_files.push_back("config.json");
    }
    write_manifest(config.out_dir, artifacts.all_files);
    return artifacts;
}

void run_prediction(const ExperimentConfig& config,
                    const std::vector<std::string>& checkpoint_paths,
                    const std::string& dep_table_path, const std::string& corpus_path,
                    const std::string& out_path) {
    if (checkpoint_paths.empty()) throw std::runtime_error("prediction needs a checkpoint");

    DepRankTable dep_table;
    const DepRankTable* dep_ptr = nullptr;
    if (config.syntax) {
        if (dep_table_path.empty())
            throw std::runtime_error("syntax features need the dep table saved at training");
        dep_table = DepRankTable::from_file(dep_table_path, config.dep_slots);
        dep_ptr = &dep_table;
    }
    const ComposeConfig compose = config.compose_config(dep_ptr);

    ModelDims expected = config.model;
    expected.input_dim = composed_dim(compose);
    expected.n_classes = static_cast<std::size_t>(num_classes(config.task));

    std::vector<FusionModel> models;
    models.reserve(checkpoint_paths.size());
    for (const auto& p : checkpoint_paths) models.push_back(load_model(p, expected));

    auto records = load_records_for(config, corpus_path);
    const auto inputs = build_inputs(records, compose);
    const auto labels = ensemble_predict(models, inputs);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write predictions: " + out_path);
    for (std::size_t i = 0; i < records.size(); ++i) {
        json j;
        j["id"] = records[i].id;
        if (config.task == Task::stance)
            j["stance"] = label_name(labels[i], config.task);
        else
            j["premise"] = labels[i];
        out << j.dump() << '\n';
    }
}

std::map<std::string, std::string> load_predictions(const std::string& path, Task task) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open predictions file: " + path);
    std::map<std::string, std::string> preds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseError("malformed prediction JSON", line_no);
        std::string id;
        try {
            id = j.at("id").get<std::string>();
            std::string value;
            if (task == Task::stance) {
                value = j.at("stance").get<std::string>();
                stance_from_string(value);  // validate
            } else {
                value = std::to_string(
                    to_int(premise_from_int(j.at("premise").get<int>())));
            }
            if (preds.count(id))
                throw std::runtime_error("duplicate prediction for id '" + id + "'");
            preds[id] = value;
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return preds;
}

}  // namespace stancekit
