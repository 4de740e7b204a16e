#include "stancekit/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stancekit/rng.hpp"

using nlohmann::json;

namespace stancekit {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {
    if (labels_.empty()) throw std::runtime_error("confusion matrix needs labels");
}

std::size_t ConfusionMatrix::index(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    throw std::runtime_error("label '" + label + "' not in confusion matrix");
}

void ConfusionMatrix::add(const std::string& gold, const std::string& pred) {
    counts_[index(gold) * labels_.size() + index(pred)] += 1;
    total_ += 1;
}

std::int64_t ConfusionMatrix::count(const std::string& gold, const std::string& pred) const {
    return counts_[index(gold) * labels_.size() + index(pred)];
}

Prf ConfusionMatrix::prf(const std::string& label) const {
    const std::size_t li = index(label);
    std::int64_t tp = 0, fp = 0, fn = 0;
    for (std::size_t g = 0; g < labels_.size(); ++g) {
        for (std::size_t p = 0; p < labels_.size(); ++p) {
            const std::int64_t c = counts_[g * labels_.size() + p];
            if (g == li && p == li) tp += c;
            else if (p == li) fp += c;
            else if (g == li) fn += c;
        }
    }
    Prf out;
    out.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    out.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    out.f1 = (out.precision + out.recall) > 0.0
                 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

Prf per_class_prf(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
                  const std::string& label) {
    if (gold.size() != pred.size())
        throw std::runtime_error("gold/prediction length mismatch");
    std::int64_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const bool g = gold[i] == label;
        const bool p = pred[i] == label;
        if (g && p) ++tp;
        else if (p) ++fp;
        else if (g) ++fn;
    }
    Prf out;
    out.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    out.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    out.f1 = (out.precision + out.recall) > 0.0
                 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

std::vector<std::string> relevant_classes(Task task) {
    if (task == Task::stance) return {"favor", "against"};
    return {"0", "1"};
}

std::vector<std::string> all_classes(Task task) {
    if (task == Task::stance) return {"favor", "against", "neither"};
    return {"0", "1"};
}

double relevant_macro_f1(const std::vector<std::string>& gold,
                         const std::vector<std::string>& pred, Task task) {
    if (gold.empty()) throw std::runtime_error("cannot score an empty record set");
    double sum = 0.0;
    const auto classes = relevant_classes(task);
    for (const auto& c : classes) sum += per_class_prf(gold, pred, c).f1;
    return sum / static_cast<double>(classes.size());
}

AggregateReport aggregate_over_claims(const std::map<std::string, ClaimScore>& claims,
                                      Task task) {
    if (claims.empty()) throw std::runtime_error("report needs at least one claim");
    AggregateReport report;
    report.task = task;
    report.claims = claims;
    report.n_claims = claims.size();
    double sum = 0.0;
    for (const auto& [name, score] : claims) sum += score.f1_rel;
    report.aggregate_f1 = sum / static_cast<double>(claims.size());
    return report;
}

AggregateReport score_predictions(const std::vector<TweetRecord>& gold,
                                  const std::map<std::string, std::string>& pred_by_id,
                                  Task task) {
    std::map<std::string, std::vector<std::string>> gold_by_claim, pred_by_claim;
    std::map<std::string, std::int64_t> counts;
    for (const auto& r : gold) {
        std::string g;
        if (task == Task::stance) {
            if (!r.stance)
                throw std::runtime_error("gold record '" + r.id + "' has no stance label");
            g = to_string(*r.stance);
        } else {
            if (!r.premise)
                throw std::runtime_error("gold record '" + r.id + "' has no premise label");
            g = std::to_string(to_int(*r.premise));
        }
        auto it = pred_by_id.find(r.id);
        if (it == pred_by_id.end())
            throw std::runtime_error("no prediction for id '" + r.id + "'");
        gold_by_claim[r.claim.name].push_back(g);
        pred_by_claim[r.claim.name].push_back(it->second);
        counts[r.claim.name] += 1;
    }
    std::map<std::string, ClaimScore> claims;
    for (const auto& [claim, gvec] : gold_by_claim) {
        ClaimScore score;
        score.n_records = counts[claim];
        score.f1_rel = relevant_macro_f1(gvec, pred_by_claim[claim], task);
        for (const auto& c : all_classes(task))
            score.per_class[c] = per_class_prf(gvec, pred_by_claim[claim], c);
        claims[claim] = score;
    }
    return aggregate_over_claims(claims, task);
}

std::string AggregateReport::to_json() const {
    json claims_json = json::object();
    for (const auto& [name, score] : claims) {
        json per_class = json::object();
        for (const auto& [cls, prf] : score.per_class)
            per_class[cls] = {{"precision", prf.precision},
                              {"recall", prf.recall},
                              {"f1", prf.f1}};
        claims_json[name] = {{"f1_rel", score.f1_rel},
                             {"n_records", score.n_records},
                             {"classes", per_class}};
    }
    json j;
    j["task"] = to_string(task);
    j["aggregate_f1"] = aggregate_f1;
    j["n_claims"] = n_claims;
    j["claims"] = claims_json;
    if (!model_name.empty()) j["model"] = model_name;
    if (!mode_name.empty()) j["mode"] = mode_name;
    return j.dump(2);
}

std::string AggregateReport::to_csv() const {
    std::ostringstream os;
    os << "claim,class,precision,recall,f1\n";
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        return std::string(buf);
    };
    for (const auto& [name, score] : claims) {
        for (const auto& [cls, prf] : score.per_class)
            os << name << ',' << cls << ',' << fmt(prf.precision) << ',' << fmt(prf.recall)
               << ',' << fmt(prf.f1) << '\n';
        os << name << ",f1_rel,,," << fmt(score.f1_rel) << '\n';
    }
    os << "all,aggregate,,," << fmt(aggregate_f1) << '\n';
    return os.str();
}

AggregateReport AggregateReport::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report file: " + path);
    json j = json::parse(in);
    AggregateReport report;
    report.task = task_from_string(j.at("task").get<std::string>());
    report.aggregate_f1 = j.at("aggregate_f1").get<double>();
    report.n_claims = j.value("n_claims", std::size_t{0});
    report.model_name = j.value("model", "");
    report.mode_name = j.value("mode", "");
    if (j.contains("claims")) {
        for (auto it = j["claims"].begin(); it != j["claims"].end(); ++it) {
            ClaimScore score;
            score.f1_rel = it.value().at("f1_rel").get<double>();
            score.n_records = it.value().value("n_records", std::int64_t{0});
            if (it.value().contains("classes")) {
                for (auto ct = it.value()["classes"].begin();
                     ct != it.value()["classes"].end(); ++ct) {
                    Prf prf;
                    prf.precision = ct.value().at("precision").get<double>();
                    prf.recall = ct.value().at("recall").get<double>();
                    prf.f1 = ct.value().at("f1").get<double>();
                    score.per_class[ct.key()] = prf;
                }
            }
            report.claims[it.key()] = score;
        }
    }
    return report;
}

namespace {

struct ClaimDistribution {
    std::string claim;
    std::vector<std::int64_t> counts;  // per class, task order
};

std::vector<ClaimDistribution> distributions_for(const SplitStats& stats, Task task) {
    std::vector<ClaimDistribution> out;
    if (task == Task::stance) {
        for (const auto& [claim, sc] : stats.stance_counts)
            out.push_back({claim, {sc[0], sc[1], sc[2]}});
    } else {
        for (const auto& [claim, pc] : stats.premise_counts)
            out.push_back({claim, {pc[0], pc[1]}});  // class order "0", "1"
    }
    return out;
}

}  // namespace

BaselineResult random_baseline(const SplitStats& stats, Task task,
                               BaselineDistribution distribution, int trials,
                               std::uint64_t seed) {
    if (trials < 1) throw std::runtime_error("baseline needs at least one trial");
    const std::size_t n_pred_classes =
        distribution == BaselineDistribution::uniform3 ? 3 : 2;
    const auto dists = distributions_for(stats, task);
    if (dists.empty()) throw std::runtime_error("baseline needs nonempty split stats");
    const auto classes = all_classes(task);
    const auto relevant = relevant_classes(task);
    if (n_pred_classes != classes.size())
        throw std::runtime_error("baseline distribution does not match the task's classes");

    BaselineResult result;

    // Plug-in arm: precision of a uniform predictor equals class prevalence,
    // recall equals the uniform hit rate q.
    const double q = 1.0 / static_cast<double>(n_pred_classes);
    double plug_sum = 0.0;
    for (const auto& dist : dists) {
        double claim_total = 0.0;
        for (auto c : dist.counts) claim_total += static_cast<double>(c);
        double f1_sum = 0.0;
        for (const auto& rc : relevant) {
            const std::size_t ci = static_cast<std::size_t>(
                std::find(classes.begin(), classes.end(), rc) - classes.begin());
            const double p_r =
                claim_total > 0.0 ? static_cast<double>(dist.counts[ci]) / claim_total : 0.0;
            const double f1 = (p_r + q) > 0.0 ? 2.0 * p_r * q / (p_r + q) : 0.0;
            f1_sum += f1;
        }
        const double f1_rel = f1_sum / static_cast<double>(relevant.size());
        result.plug_in_per_claim[dist.claim] = f1_rel;
        plug_sum += f1_rel;
    }
    result.plug_in_value = plug_sum / static_cast<double>(dists.size());

    // Monte-Carlo arm: i.i.d. uniform predictions over gold sequences drawn
    // from the recorded counts.
    DetRng root(seed);
    double mc_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        DetRng rng = root.fork(static_cast<std::uint64_t>(t) ^ 0xba5e11ull);
        double claim_sum = 0.0;
        for (const auto& dist : dists) {
            std::vector<std::string> gold, pred;
            for (std::size_t ci = 0; ci < dist.counts.size(); ++ci)
                for (std::int64_t k = 0; k < dist.counts[ci]; ++k)
                    gold.push_back(classes[ci]);
            pred.reserve(gold.size());
            for (std::size_t i = 0; i < gold.size(); ++i)
                pred.push_back(classes[rng.bounded(n_pred_classes)]);
            claim_sum += relevant_macro_f1(gold, pred, task);
        }
        mc_sum += claim_sum / static_cast<double>(dists.size());
    }
    result.monte_carlo_mean = mc_sum / static_cast<double>(trials);
    return result;
}

}  // namespace stancekit
