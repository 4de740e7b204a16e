#include "stancekit/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "stancekit/util.hpp"

using nlohmann::json;

namespace stancekit {

const char* to_string(StanceLabel s) {
    switch (s) {
        case StanceLabel::favor: return "favor";
        case StanceLabel::against: return "against";
        case StanceLabel::neither: return "neither";
    }
    return "neither";
}

StanceLabel stance_from_string(const std::string& s) {
    if (s == "favor") return StanceLabel::favor;
    if (s == "against") return StanceLabel::against;
    if (s == "neither") return StanceLabel::neither;
    throw std::runtime_error("unknown stance label: '" + s + "'");
}

PremiseFlag premise_from_int(int v) {
    if (v == 0) return PremiseFlag::absent;
    if (v == 1) return PremiseFlag::present;
    throw std::runtime_error("premise flag must be 0 or 1, got " + std::to_string(v));
}

std::string canonical_claim_text(const std::string& name) {
    if (name == "face_masks") return "face masks are necessary";
    if (name == "school_closures") return "schools should be closed";
    if (name == "stay_at_home_orders") return "stay-at-home orders are necessary";
    if (name == "vaccine_mandates") return "vaccination should be mandatory";
    return "";
}

ClaimRegistry::ClaimRegistry() {
    for (const char* name :
         {"face_masks", "school_closures", "stay_at_home_orders", "vaccine_mandates"}) {
        texts_[name] = canonical_claim_text(name);
    }
}

ClaimRegistry ClaimRegistry::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open claims file: " + path);
    json j = json::parse(in);
    ClaimRegistry reg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        reg.set(it.key(), it.value().get<std::string>());
    }
    return reg;
}

void ClaimRegistry::set(const std::string& name, const std::string& text) {
    if (name.empty()) throw std::runtime_error("claim topic name must be non-empty");
    texts_[name] = text;
}

std::string ClaimRegistry::text_for(const std::string& name) const {
    auto it = texts_.find(name);
    return it == texts_.end() ? std::string() : it->second;
}

ClaimTopic ClaimRegistry::topic(const std::string& name) const {
    return ClaimTopic{name, text_for(name)};
}

namespace {

void check_record(const TweetRecord& r, std::size_t line_no, bool strict,
                  std::vector<std::string>* warnings) {
    if (r.id.empty()) throw ParseError("record has empty id", line_no);
    if (r.raw_text.empty()) throw ParseError("record '" + r.id + "' has empty text", line_no);
    if (r.claim.name.empty())
        throw ParseError("record '" + r.id + "' has empty claim", line_no);
    if (r.premise == PremiseFlag::present &&
        (!r.stance || *r.stance == StanceLabel::neither)) {
        const std::string msg = "record '" + r.id +
                                "' has a premise but no favor/against stance";
        if (strict) throw ParseError(msg, line_no);
        if (warnings) warnings->push_back(msg);
    }
}

TweetRecord record_from_json(const json& j, std::size_t line_no) {
    TweetRecord r;
    try {
        r.id = j.at("id").get<std::string>();
        r.raw_text = j.at("text").get<std::string>();
        const std::string claim = j.at("claim").get<std::string>();
        r.claim = ClaimTopic{claim, canonical_claim_text(claim)};
        if (j.contains("stance") && !j["stance"].is_null())
            r.stance = stance_from_string(j["stance"].get<std::string>());
        if (j.contains("premise") && !j["premise"].is_null())
            r.premise = premise_from_int(j["premise"].get<int>());
        if (j.contains("clean_text") && !j["clean_text"].is_null())
            r.clean_text = j["clean_text"].get<std::string>();
        if (j.contains("dep_tags") && !j["dep_tags"].is_null())
            r.dep_tags = j["dep_tags"].get<std::vector<std::string>>();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), line_no);
    }
    return r;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

TweetRecord record_from_tsv(const std::string& line, std::size_t line_no) {
    auto cols = split_tabs(line);
    if (cols.size() < 5)
        throw ParseError("expected 5 tab-separated columns, got " +
                             std::to_string(cols.size()),
                         line_no);
    TweetRecord r;
    r.id = cols[0];
    r.raw_text = cols[1];
    r.claim = ClaimTopic{cols[2], canonical_claim_text(cols[2])};
    try {
        if (!cols[3].empty()) r.stance = stance_from_string(cols[3]);
        if (!cols[4].empty()) r.premise = premise_from_int(std::stoi(cols[4]));
    } catch (const std::exception& e) {
        throw ParseError(e.what(), line_no);
    }
    return r;
}

std::string tsv_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(c == '\t' || c == '\n' || c == '\r' ? ' ' : c);
    return out;
}

}  // namespace

std::vector<TweetRecord> load_corpus(const std::string& path, const LoadOptions& opts,
                                     std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);

    std::vector<TweetRecord> records;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (opts.format == CorpusFormat::tsv && !header_skipped) {
            header_skipped = true;  // first row is the column header
            continue;
        }
        TweetRecord r;
        if (opts.format == CorpusFormat::jsonl) {
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded()) throw ParseError("malformed JSON", line_no);
            r = record_from_json(j, line_no);
        } else {
            r = record_from_tsv(line, line_no);
        }
        check_record(r, line_no, opts.strict, warnings);
        if (!seen_ids.insert(r.id).second)
            throw ParseError("duplicate id '" + r.id + "'", line_no);
        records.push_back(std::move(r));
    }
    return records;
}

std::string record_to_json_line(const TweetRecord& r) {
    json j;
    j["id"] = r.id;
    j["text"] = r.raw_text;
    j["claim"] = r.claim.name;
    if (r.stance) j["stance"] = to_string(*r.stance);
    if (r.premise) j["premise"] = to_int(*r.premise);
    if (r.clean_text) j["clean_text"] = *r.clean_text;
    if (r.dep_tags) j["dep_tags"] = *r.dep_tags;
    return j.dump();
}

void save_corpus(const std::string& path, const std::vector<TweetRecord>& records,
                 CorpusFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path);
    if (format == CorpusFormat::jsonl) {
        for (const auto& r : records) out << record_to_json_line(r) << '\n';
    } else {
        out << "id\ttext\tclaim\tstance\tpremise\n";
        for (const auto& r : records) {
            out << tsv_escape(r.id) << '\t' << tsv_escape(r.raw_text) << '\t'
                << tsv_escape(r.claim.name) << '\t'
                << (r.stance ? to_string(*r.stance) : "") << '\t'
                << (r.premise ? std::to_string(to_int(*r.premise)) : "") << '\n';
        }
    }
}

SplitStats summarize(const std::vector<TweetRecord>& records) {
    SplitStats stats;
    for (const auto& r : records) {
        if (!r.stance)
            throw std::runtime_error("record '" + r.id + "' is missing a stance label");
        if (!r.premise)
            throw std::runtime_error("record '" + r.id + "' is missing a premise label");
        auto& sc = stats.stance_counts[r.claim.name];
        auto& pc = stats.premise_counts[r.claim.name];
        sc[static_cast<std::size_t>(*r.stance)] += 1;
        pc[static_cast<std::size_t>(to_int(*r.premise))] += 1;
        stats.total += 1;
    }
    return stats;
}

SplitStats SplitStats::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stats file: " + path);
    json j = json::parse(in);
    SplitStats s;
    s.total = j.at("total").get<std::int64_t>();
    if (j.contains("note")) s.note = j["note"].get<std::string>();
    for (auto it = j.at("claims").begin(); it != j.at("claims").end(); ++it) {
        const json& c = it.value();
        std::array<std::int64_t, 3> sc{};
        sc[0] = c.at("stance").at("favor").get<std::int64_t>();
        sc[1] = c.at("stance").at("against").get<std::int64_t>();
        sc[2] = c.at("stance").at("neither").get<std::int64_t>();
        std::array<std::int64_t, 2> pc{};
        pc[0] = c.at("premise").at("0").get<std::int64_t>();
        pc[1] = c.at("premise").at("1").get<std::int64_t>();
        s.stance_counts[it.key()] = sc;
        s.premise_counts[it.key()] = pc;
    }
    return s;
}

std::string SplitStats::to_json() const {
    json claims = json::object();
    for (const auto& [claim, sc] : stance_counts) {
        json c;
        c["stance"] = {{"favor", sc[0]}, {"against", sc[1]}, {"neither", sc[2]}};
        auto it = premise_counts.find(claim);
        std::array<std::int64_t, 2> pc = it == premise_counts.end()
                                             ? std::array<std::int64_t, 2>{0, 0}
                                             : it->second;
        c["premise"] = {{"0", pc[0]}, {"1", pc[1]}};
        claims[claim] = c;
    }
    json j;
    j["claims"] = claims;
    j["total"] = total;
    if (!note.empty()) j["note"] = note;
    return j.dump(2);
}

ValidationReport validate_split(const std::vector<TweetRecord>& records,
                                const SplitStats& expected) {
    const SplitStats actual = summarize(records);
    ValidationReport report;
    report.note = expected.note;

    auto claims = [](const SplitStats& a, const SplitStats& b) {
        std::map<std::string, bool> names;
        for (const auto& [k, v] : a.stance_counts) names[k] = true;
        for (const auto& [k, v] : b.stance_counts) names[k] = true;
        return names;
    };
    static const char* stance_names[] = {"favor", "against", "neither"};
    for (const auto& [claim, unused] : claims(expected, actual)) {
        std::array<std::int64_t, 3> exp_s{}, act_s{};
        std::array<std::int64_t, 2> exp_p{}, act_p{};
        if (auto it = expected.stance_counts.find(claim); it != expected.stance_counts.end())
            exp_s = it->second;
        if (auto it = actual.stance_counts.find(claim); it != actual.stance_counts.end())
            act_s = it->second;
        if (auto it = expected.premise_counts.find(claim); it != expected.premise_counts.end())
            exp_p = it->second;
        if (auto it = actual.premise_counts.find(claim); it != actual.premise_counts.end())
            act_p = it->second;
        for (int s = 0; s < 3; ++s) {
            if (exp_s[static_cast<std::size_t>(s)] != act_s[static_cast<std::size_t>(s)])
                report.mismatches.push_back({claim,
                                             std::string("stance/") + stance_names[s],
                                             exp_s[static_cast<std::size_t>(s)],
                                             act_s[static_cast<std::size_t>(s)]});
        }
        for (int p = 0; p < 2; ++p) {
            if (exp_p[static_cast<std::size_t>(p)] != act_p[static_cast<std::size_t>(p)])
                report.mismatches.push_back({claim, "premise/" + std::to_string(p),
                                             exp_p[static_cast<std::size_t>(p)],
                                             act_p[static_cast<std::size_t>(p)]});
        }
    }
    if (expected.total != actual.total)
        report.mismatches.push_back({"", "total", expected.total, actual.total});
    return report;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    if (pass()) {
        os << "validation: PASS\n";
    } else {
        os << "validation: FAIL (" << mismatches.size() << " mismatched cells)\n";
        for (const auto& m : mismatches) {
            os << "  " << (m.claim.empty() ? "<split>" : m.claim) << " " << m.cell
               << ": expected " << m.expected << ", got " << m.actual << "\n";
        }
    }
    if (!note.empty()) os << "note: " << note << "\n";
    return os.str();
}

}  // namespace stancekit
