// stancekit: batch pipeline for stance & premise detection on mandate tweets.
//
// Subcommands cover the whole workflow: preprocess -> weaklabel -> sample ->
// aggregate -> stats -> train -> predict -> evaluate -> baseline -> report,
// plus emotion distribution summaries. Every command is deterministic given
// its inputs and seed.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stancekit/checkpoint.hpp"
#include "stancekit/corpus.hpp"
#include "stancekit/curation.hpp"
#include "stancekit/experiment.hpp"
#include "stancekit/fixtures.hpp"
#include "stancekit/metrics.hpp"
#include "stancekit/preprocess.hpp"
#include "stancekit/report.hpp"
#include "stancekit/util.hpp"

using namespace stancekit;
using nlohmann::json;
namespace fs = std::filesystem;

#ifndef STANCEKIT_DATA_DIR
#define STANCEKIT_DATA_DIR "data"
#endif

namespace {

std::string data_file(const char* name) {
    return (fs::path(STANCEKIT_DATA_DIR) / name).string();
}

LoadOptions load_options(const std::string& format) {
    LoadOptions opts;
    if (format == "tsv") opts.format = CorpusFormat::tsv;
    else if (format != "jsonl") throw std::runtime_error("unknown format: '" + format + "'");
    return opts;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// ---------------------------------------------------------------------------

int cmd_preprocess(const std::string& in, const std::string& format,
                   const std::string& out_path, const std::string& dropped_path,
                   std::size_t min_len, const std::string& emoji_mode,
                   const std::string& emoji_table_path, bool no_dedup, bool keep_urls,
                   bool keep_mentions, bool keep_hashtags) {
    auto records = load_corpus(in, load_options(format));
    EmojiTable table = EmojiTable::from_file(emoji_table_path);
    CleaningConfig cfg;
    cfg.min_length_chars = min_len;
    cfg.emoji_mode = emoji_mode_from_string(emoji_mode);
    cfg.emoji_table = &table;
    cfg.dedup = !no_dedup;
    cfg.strip_urls = !keep_urls;
    cfg.strip_mentions = !keep_mentions;
    cfg.strip_hashtags = !keep_hashtags;

    FilterResult result = filter_corpus(records, cfg);
    save_corpus(out_path, result.kept);
    if (!dropped_path.empty()) {
        std::ofstream out(dropped_path);
        if (!out) throw std::runtime_error("cannot write " + dropped_path);
        for (const auto& [id, reason] : result.dropped) {
            json j;
            j["id"] = id;
            j["reason"] = to_string(reason);
            out << j.dump() << '\n';
        }
    }
    std::cout << "kept " << result.kept.size() << ", dropped " << result.dropped.size()
              << "\n";
    return 0;
}

int cmd_weaklabel(const std::string& in, const std::string& lexicon_path,
                  const std::string& out_path) {
    auto records = load_corpus(in);
    HashtagLexicon lexicon = HashtagLexicon::from_file(lexicon_path);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    std::array<std::size_t, 3> tally{};
    for (const auto& r : records) {
        const StanceLabel label = weak_label(r.raw_text, lexicon);
        tally[static_cast<std::size_t>(label)] += 1;
        json j;
        j["id"] = r.id;
        j["stance"] = to_string(label);
        out << j.dump() << '\n';
    }
    std::cout << "weak labels: favor " << tally[0] << ", against " << tally[1]
              << ", neither " << tally[2] << "\n";
    return 0;
}

int cmd_sample(const std::string& in, const std::string& labels_path, std::size_t n,
               std::uint64_t seed, const std::string& out_path) {
    auto records = load_corpus(in);
    std::map<std::string, StanceLabel> by_id;
    {
        std::ifstream lin(labels_path);
        if (!lin) throw std::runtime_error("cannot open labels file: " + labels_path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(lin, line)) {
            ++line_no;
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded()) throw ParseError("malformed label JSON", line_no);
            by_id[j.at("id").get<std::string>()] =
                stance_from_string(j.at("stance").get<std::string>());
        }
    }
    std::vector<StanceLabel> weak;
    weak.reserve(records.size());
    for (const auto& r : records) {
        auto it = by_id.find(r.id);
        if (it == by_id.end())
            throw std::runtime_error("no weak label for id '" + r.id + "'");
        weak.push_back(it->second);
    }
    auto subset = stratified_sample(records, weak, n, seed);
    save_corpus(out_path, subset);
    std::cout << "sampled " << subset.size() << " of " << records.size() << "\n";
    return 0;
}

int cmd_aggregate(const std::string& in, const std::string& ballots_path, int quorum,
                  const std::string& out_path, const std::string& dropped_path) {
    auto records = load_corpus(in);
    auto ballots = load_ballots(ballots_path);
    std::map<std::string, const AnnotationBallot*> ballot_by_id;
    for (const auto& b : ballots) ballot_by_id[b.tweet_id] = &b;

    std::vector<TweetRecord> kept;
    std::vector<std::pair<std::string, std::string>> dropped;
    for (auto r : records) {
        auto it = ballot_by_id.find(r.id);
        if (it == ballot_by_id.end())
            throw std::runtime_error("no ballot for id '" + r.id + "'");
        const AggregationOutcome outcome = aggregate_ballot(*it->second, quorum);
        if (outcome.kept) {
            r.stance = outcome.stance;
            r.premise = outcome.premise;
            kept.push_back(std::move(r));
        } else {
            dropped.emplace_back(r.id, outcome.reason);
        }
    }
    save_corpus(out_path, kept);
    if (!dropped_path.empty()) {
        std::ofstream out(dropped_path);
        if (!out) throw std::runtime_error("cannot write " + dropped_path);
        for (const auto& [id, reason] : dropped) {
            json j;
            j["id"] = id;
            j["reason"] = reason;
            out << j.dump() << '\n';
        }
    }
    std::cout << "kept " << kept.size() << ", dropped " << dropped.size()
              << " (quorum " << quorum << "/5)\n";
    return 0;
}

int cmd_stats(const std::string& in, const std::string& format,
              const std::string& expect_path) {
    auto records = load_corpus(in, load_options(format));
    const SplitStats stats = summarize(records);
    std::cout << stats.to_json() << "\n";
    if (expect_path.empty()) return 0;
    const ValidationReport report = validate_split(records, SplitStats::from_file(expect_path));
    std::cout << report.to_text();
    return report.pass() ? 0 : 2;
}

int cmd_train(const std::string& config_path) {
    const ExperimentConfig config = ExperimentConfig::from_file(config_path);
    const TrainArtifacts artifacts = run_training(config);
    std::cout << "wrote " << artifacts.all_files.size() << " artifacts to " << config.out_dir
              << "\n";
    for (const auto& f : artifacts.checkpoint_files) std::cout << "  checkpoint " << f << "\n";
    return 0;
}

int cmd_predict(const std::string& config_path, const std::vector<std::string>& models,
                const std::string& dep_table, const std::string& in,
                const std::string& out_path) {
    const ExperimentConfig config = ExperimentConfig::from_file(config_path);
    run_prediction(config, models, dep_table, in, out_path);
    std::cout << "predictions written to " << out_path << "\n";
    return 0;
}

int cmd_evaluate(const std::string& gold_path, const std::string& pred_path,
                 const std::string& task_name, const std::string& out_path,
                 const std::string& csv_path, const std::string& md_path,
                 const std::string& model_name, const std::string& mode_name) {
    const Task task = task_from_string(task_name);
    auto gold = load_corpus(gold_path);
    auto preds = load_predictions(pred_path, task);
    // both directions of the id join must be exact
    std::map<std::string, bool> gold_ids;
    for (const auto& r : gold) gold_ids[r.id] = true;
    for (const auto& [id, unused] : preds)
        if (!gold_ids.count(id))
            throw std::runtime_error("prediction id '" + id + "' not present in gold corpus");

    AggregateReport report = score_predictions(gold, preds, task);
    report.model_name = model_name;
    report.mode_name = mode_name;
    if (!out_path.empty()) write_text(out_path, emit_report(report, ReportFormat::json));
    if (!csv_path.empty()) write_text(csv_path, emit_report(report, ReportFormat::csv));
    if (!md_path.empty()) write_text(md_path, emit_report(report, ReportFormat::markdown));
    std::cout << "aggregate F1 (" << task_name << "): " << report.aggregate_f1 << "\n";
    for (const auto& [claim, score] : report.claims)
        std::cout << "  " << claim << ": " << score.f1_rel << " (" << score.n_records
                  << " records)\n";
    return 0;
}

int cmd_baseline(const std::string& stats_path, const std::string& task_name,
                 const std::string& dist_name, int trials, std::uint64_t seed,
                 double reference, const std::string& out_path) {
    const Task task = task_from_string(task_name);
    const BaselineDistribution dist = dist_name == "uniform2"
                                          ? BaselineDistribution::uniform2
                                          : BaselineDistribution::uniform3;
    const SplitStats stats = SplitStats::from_file(stats_path);
    const BaselineResult result = random_baseline(stats, task, dist, trials, seed);
    std::cout << "plug-in baseline:     " << result.plug_in_value << "\n";
    std::cout << "monte-carlo mean (" << trials << " trials): " << result.monte_carlo_mean
              << "\n";
    if (reference >= 0.0)
        std::cout << "reference value " << reference << " differs from plug-in by "
                  << result.plug_in_value - reference << "\n";
    if (!out_path.empty()) {
        json claims = json::object();
        for (const auto& [claim, f1] : result.plug_in_per_claim)
            claims[claim] = {{"f1_rel", f1}};
        json j;
        j["task"] = task_name;
        j["model"] = "random";
        j["aggregate_f1"] = result.plug_in_value;
        j["monte_carlo_mean"] = result.monte_carlo_mean;
        j["n_claims"] = result.plug_in_per_claim.size();
        j["claims"] = claims;
        write_text(out_path, j.dump(2) + "\n");
    }
    return 0;
}

struct ReportEntrySpec {
    std::string model, mode, file;
};

ReportEntrySpec parse_entry(const std::string& spec) {
    ReportEntrySpec e;
    std::size_t start = 0;
    while (start < spec.size()) {
        std::size_t comma = spec.find(',', start);
        if (comma == std::string::npos) comma = spec.size();
        const std::string kv = spec.substr(start, comma - start);
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad --entry item (want key=value): " + kv);
        const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "model") e.model = value;
        else if (key == "mode") e.mode = value;
        else if (key == "file") e.file = value;
        else throw std::runtime_error("unknown --entry key: " + key);
        start = comma + 1;
    }
    if (e.model.empty() || e.mode.empty() || e.file.empty())
        throw std::runtime_error("--entry needs model=, mode=, file=");
    if (e.mode != "tweets" && e.mode != "tweets_claims")
        throw std::runtime_error("--entry mode must be tweets or tweets_claims");
    return e;
}

int cmd_report(const std::vector<std::string>& entry_specs, const std::string& out_dir,
               const std::string& title) {
    if (entry_specs.empty()) throw std::runtime_error("report needs at least one --entry");
    fs::create_directories(out_dir);
    std::vector<ResultEntry> entries;
    for (const auto& spec : entry_specs) {
        const ReportEntrySpec e = parse_entry(spec);
        ResultEntry entry;
        entry.model = e.model;
        entry.mode = e.mode;
        entry.report = AggregateReport::from_json_file(e.file);
        entry.task = entry.report.task;
        entries.push_back(std::move(entry));
    }

    std::vector<std::string> files;
    write_text((fs::path(out_dir) / "report.md").string(), results_markdown(entries, title));
    files.push_back("report.md");
    write_text((fs::path(out_dir) / "results.csv").string(), results_csv(entries));
    files.push_back("results.csv");

    // one bar chart per (task, claim): every entry that scored that claim
    for (const char* task_name : {"stance", "premise"}) {
        const Task task = task_from_string(task_name);
        std::map<std::string, std::vector<std::pair<std::string, double>>> by_claim;
        for (const auto& e : entries) {
            if (e.task != task) continue;
            for (const auto& [claim, score] : e.report.claims)
                by_claim[claim].emplace_back(e.model + " (" + e.mode + ")", score.f1_rel);
        }
        for (const auto& [claim, bars] : by_claim) {
            const std::string name = std::string("chart_") + task_name + "_" + claim + ".svg";
            write_text((fs::path(out_dir) / name).string(),
                       svg_bar_chart(std::string("F1 ") + task_name + " - " + claim, bars));
            files.push_back(name);
        }
    }
    write_manifest(out_dir, files);
    std::cout << "report written to " << out_dir << " (" << files.size() << " files)\n";
    return 0;
}

int cmd_emotions(const std::string& in, const std::string& emotions_path,
                 const std::string& out_dir) {
    auto records = load_corpus(in);
    auto emotions = load_emotions(emotions_path);
    const auto dist = emotion_distribution(records, emotions);
    fs::create_directories(out_dir);

    std::vector<std::string> groups;
    std::vector<std::vector<double>> rows;
    for (const auto& [stance, row] : dist) {
        groups.push_back(stance);
        std::vector<double> r;
        for (const auto& label : kEmotionLabels) r.push_back(row.at(label));
        rows.push_back(std::move(r));
    }
    write_text((fs::path(out_dir) / "emotions.csv").string(), emotion_csv(dist));
    write_text((fs::path(out_dir) / "emotions.svg").string(),
               svg_stacked_chart("Emotion distribution per stance", groups, kEmotionLabels,
                                 rows));
    write_manifest(out_dir, {"emotions.csv", "emotions.svg"});
    std::cout << "emotion distributions written to " << out_dir << "\n";
    return 0;
}

int cmd_fixture(const std::string& out_dir, std::uint64_t seed, std::size_t pool_per_stance) {
    fs::create_directories(out_dir);
    for (const auto& spec : fixtures::reference_splits()) {
        save_corpus((fs::path(out_dir) / (spec.name + ".jsonl")).string(),
                    fixtures::synth_split(spec, seed));
    }
    const auto pool = fixtures::synth_raw_pool(pool_per_stance, seed);
    save_corpus((fs::path(out_dir) / "raw_pool.jsonl").string(), pool.records);
    {
        std::ofstream out(fs::path(out_dir) / "ballots.jsonl");
        for (const auto& b : fixtures::synth_ballots(pool, seed)) {
            json j;
            j["tweet_id"] = b.tweet_id;
            json sv = json::array(), pv = json::array();
            for (const auto& s : b.stance_votes) sv.push_back(to_string(s));
            for (const auto& p : b.premise_votes) pv.push_back(to_int(p));
            j["stance_votes"] = sv;
            j["premise_votes"] = pv;
            out << j.dump() << '\n';
        }
    }
    {
        const auto vaccines = fixtures::synth_split(fixtures::reference_split("vaccines"), seed);
        std::ofstream out(fs::path(out_dir) / "emotions.jsonl");
        for (const auto& e : fixtures::synth_emotions(vaccines, seed)) {
            json j;
            j["tweet_id"] = e.tweet_id;
            j["emotion"] = e.emotion;
            out << j.dump() << '\n';
        }
    }
    std::cout << "fixture written to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stance & premise detection pipeline for mandate tweets"};
    app.require_subcommand(1);

    // preprocess
    std::string pp_in, pp_format = "jsonl", pp_out, pp_dropped, pp_emoji = "to_text";
    std::string pp_table = data_file("emoji_names.json");
    std::size_t pp_minlen = 150;
    bool pp_no_dedup = false, pp_keep_urls = false, pp_keep_mentions = false,
         pp_keep_hashtags = false;
    auto* preprocess = app.add_subcommand("preprocess", "clean and filter a corpus");
    preprocess->add_option("--in", pp_in)->required();
    preprocess->add_option("--format", pp_format, "jsonl | tsv");
    preprocess->add_option("--out", pp_out)->required();
    preprocess->add_option("--dropped", pp_dropped, "JSONL of {id, reason}");
    preprocess->add_option("--min-len", pp_minlen, "minimum cleaned length in characters");
    preprocess->add_option("--emoji", pp_emoji, "to_text | remove | keep");
    preprocess->add_option("--emoji-table", pp_table);
    preprocess->add_flag("--no-dedup", pp_no_dedup);
    preprocess->add_flag("--keep-urls", pp_keep_urls);
    preprocess->add_flag("--keep-mentions", pp_keep_mentions);
    preprocess->add_flag("--keep-hashtags", pp_keep_hashtags);

    // weaklabel
    std::string wl_in, wl_out, wl_lexicon = data_file("hashtag_lexicon.json");
    auto* weaklabel = app.add_subcommand("weaklabel", "hashtag-based weak stance labels");
    weaklabel->add_option("--in", wl_in)->required();
    weaklabel->add_option("--out", wl_out)->required();
    weaklabel->add_option("--lexicon", wl_lexicon);

    // sample
    std::string sm_in, sm_labels, sm_out;
    std::size_t sm_n = 3000;
    std::uint64_t sm_seed = 7;
    auto* sample = app.add_subcommand("sample", "stance-stratified sample");
    sample->add_option("--in", sm_in)->required();
    sample->add_option("--labels", sm_labels, "weak label JSONL")->required();
    sample->add_option("--n", sm_n);
    sample->add_option("--seed", sm_seed);
    sample->add_option("--out", sm_out)->required();

    // aggregate
    std::string ag_in, ag_ballots, ag_out, ag_dropped;
    int ag_quorum = 4;
    auto* aggregate = app.add_subcommand("aggregate", "apply annotation ballots");
    aggregate->add_option("--in", ag_in)->required();
    aggregate->add_option("--ballots", ag_ballots)->required();
    aggregate->add_option("--quorum", ag_quorum);
    aggregate->add_option("--out", ag_out)->required();
    aggregate->add_option("--dropped", ag_dropped);

    // stats
    std::string st_in, st_format = "jsonl", st_expect;
    auto* stats = app.add_subcommand("stats", "split statistics and validation");
    stats->add_option("--in", st_in)->required();
    stats->add_option("--format", st_format, "jsonl | tsv");
    stats->add_option("--expect", st_expect, "expected stats JSON");

    // train
    std::string tr_config;
    auto* train_cmd = app.add_subcommand("train", "train from an experiment config");
    train_cmd->add_option("--config", tr_config)->required();

    // predict
    std::string pr_config, pr_dep_table, pr_in, pr_out;
    std::vector<std::string> pr_models;
    auto* predict_cmd = app.add_subcommand("predict", "predict with saved checkpoints");
    predict_cmd->add_option("--config", pr_config)->required();
    predict_cmd->add_option("--model", pr_models, "checkpoint path (repeat to ensemble)")
        ->required();
    predict_cmd->add_option("--dep-table", pr_dep_table);
    predict_cmd->add_option("--in", pr_in)->required();
    predict_cmd->add_option("--out", pr_out)->required();

    // evaluate
    std::string ev_gold, ev_pred, ev_task = "stance", ev_out, ev_csv, ev_md,
                ev_model = "dual-view", ev_mode = "tweets";
    auto* evaluate = app.add_subcommand("evaluate", "score predictions against gold");
    evaluate->add_option("--gold", ev_gold)->required();
    evaluate->add_option("--pred", ev_pred)->required();
    evaluate->add_option("--task", ev_task);
    evaluate->add_option("--out", ev_out, "report JSON");
    evaluate->add_option("--csv", ev_csv, "per-class CSV");
    evaluate->add_option("--md", ev_md, "single-row markdown table");
    evaluate->add_option("--model-name", ev_model);
    evaluate->add_option("--mode-name", ev_mode);

    // baseline
    std::string bl_stats, bl_task = "stance", bl_dist = "uniform3", bl_out;
    int bl_trials = 1000;
    std::uint64_t bl_seed = 7;
    double bl_reference = -1.0;
    auto* baseline = app.add_subcommand("baseline", "uniform random baseline");
    baseline->add_option("--stats", bl_stats, "split stats JSON")->required();
    baseline->add_option("--task", bl_task);
    baseline->add_option("--distribution", bl_dist, "uniform3 | uniform2");
    baseline->add_option("--trials", bl_trials);
    baseline->add_option("--seed", bl_seed);
    baseline->add_option("--reference", bl_reference,
                         "externally reported value to compare against");
    baseline->add_option("--out", bl_out, "report-shaped JSON");

    // report
    std::vector<std::string> rp_entries;
    std::string rp_out_dir, rp_title = "Results";
    auto* report = app.add_subcommand("report", "markdown table + per-claim charts");
    report->add_option("--entry", rp_entries, "model=NAME,mode=tweets|tweets_claims,file=PATH")
        ->required();
    report->add_option("--out-dir", rp_out_dir)->required();
    report->add_option("--title", rp_title);

    // emotions
    std::string em_in, em_file, em_out_dir;
    auto* emotions = app.add_subcommand("emotions", "per-stance emotion distributions");
    emotions->add_option("--in", em_in)->required();
    emotions->add_option("--emotions", em_file)->required();
    emotions->add_option("--out-dir", em_out_dir)->required();

    // fixture
    std::string fx_out_dir;
    std::uint64_t fx_seed = 7;
    std::size_t fx_pool = 300;
    auto* fixture = app.add_subcommand("fixture", "write the bundled synthetic dataset");
    fixture->add_option("--out-dir", fx_out_dir)->required();
    fixture->add_option("--seed", fx_seed);
    fixture->add_option("--pool-per-stance", fx_pool);

    CLI11_PARSE(app, argc, argv);

    try {
        if (preprocess->parsed())
            return cmd_preprocess(pp_in, pp_format, pp_out, pp_dropped, pp_minlen, pp_emoji,
                                  pp_table, pp_no_dedup, pp_keep_urls, pp_keep_mentions,
                                  pp_keep_hashtags);
        if (weaklabel->parsed()) return cmd_weaklabel(wl_in, wl_lexicon, wl_out);
        if (sample->parsed()) return cmd_sample(sm_in, sm_labels, sm_n, sm_seed, sm_out);
        if (aggregate->parsed())
            return cmd_aggregate(ag_in, ag_ballots, ag_quorum, ag_out, ag_dropped);
        if (stats->parsed()) return cmd_stats(st_in, st_format, st_expect);
        if (train_cmd->parsed()) return cmd_train(tr_config);
        if (predict_cmd->parsed())
            return cmd_predict(pr_config, pr_models, pr_dep_table, pr_in, pr_out);
        if (evaluate->parsed())
            return cmd_evaluate(ev_gold, ev_pred, ev_task, ev_out, ev_csv, ev_md, ev_model,
                                ev_mode);
        if (baseline->parsed())
            return cmd_baseline(bl_stats, bl_task, bl_dist, bl_trials, bl_seed, bl_reference,
                                bl_out);
        if (report->parsed()) return cmd_report(rp_entries, rp_out_dir, rp_title);
        if (emotions->parsed()) return cmd_emotions(em_in, em_file, em_out_dir);
        if (fixture->parsed()) return cmd_fixture(fx_out_dir, fx_seed, fx_pool);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
