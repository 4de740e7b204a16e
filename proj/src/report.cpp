#include "stancekit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stancekit/util.hpp"

using nlohmann::json;

namespace stancekit {

namespace {

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::string(buf);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string results_markdown(const std::vector<ResultEntry>& entries,
                             const std::string& title) {
    // cell key: (model, mode, task) -> score
    std::map<std::string, std::map<std::string, double>> rows;
    std::vector<std::string> row_order;
    for (const auto& e : entries) {
        if (!rows.count(e.model)) row_order.push_back(e.model);
        rows[e.model][e.mode + "/" + to_string(e.task)] = e.report.aggregate_f1;
    }

    std::ostringstream os;
    if (!title.empty()) os << "# " << title << "\n\n";
    os << "| Model | Tweets | Tweets | Tweets + Claims | Tweets + Claims |\n";
    os << "|---|---|---|---|---|\n";
    os << "| | F1 Stance | F1 Premise | F1 Stance | F1 Premise |\n";
    for (const auto& model : row_order) {
        const auto& cells = rows[model];
        auto cell = [&cells](const char* key) {
            auto it = cells.find(key);
            return it == cells.end() ? std::string("-") : fmt3(it->second);
        };
        os << "| " << model << " | " << cell("tweets/stance") << " | "
           << cell("tweets/premise") << " | " << cell("tweets_claims/stance") << " | "
           << cell("tweets_claims/premise") << " |\n";
    }
    return os.str();
}

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "markdown") return ReportFormat::markdown;
    throw std::runtime_error("unknown report format: '" + s + "'");
}

std::string emit_report(const AggregateReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: return report.to_json() + "\n";
        case ReportFormat::csv: return report.to_csv();
        case ReportFormat::markdown: {
            ResultEntry entry;
            entry.model = report.model_name.empty() ? "model" : report.model_name;
            entry.mode = report.mode_name.empty() ? "tweets" : report.mode_name;
            entry.task = report.task;
            entry.report = report;
            return results_markdown({entry});
        }
    }
    return "";
}

std::string results_csv(const std::vector<ResultEntry>& entries) {
    std::ostringstream os;
    os << "model,mode,task,aggregate_f1\n";
    for (const auto& e : entries)
        os << e.model << ',' << e.mode << ',' << to_string(e.task) << ','
           << fmt3(e.report.aggregate_f1) << '\n';
    return os.str();
}

std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::pair<std::string, double>>& bars,
                          double y_max) {
    const int bar_w = 60, gap = 30, margin = 60, plot_h = 240;
    const int width = margin * 2 + static_cast<int>(bars.size()) * (bar_w + gap);
    const int height = plot_h + 110;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">"
       << xml_escape(title) << "</text>\n";
    // y axis with a few reference lines
    for (int tick = 0; tick <= 4; ++tick) {
        const double frac = tick / 4.0;
        const int y = 40 + static_cast<int>(std::lround(plot_h * (1.0 - frac)));
        os << "<line x1=\"" << margin - 6 << "\" y1=\"" << y << "\" x2=\""
           << width - margin / 2 << "\" y2=\"" << y
           << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << margin - 10 << "\" y=\"" << y + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt3(y_max * frac) << "</text>\n";
    }
    int x = margin;
    for (const auto& [label, value] : bars) {
        const double clamped = std::clamp(value, 0.0, y_max);
        const int h = static_cast<int>(std::lround(plot_h * clamped / y_max));
        const int y = 40 + plot_h - h;
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w
           << "\" height=\"" << h << "\" fill=\"#4878a8\"/>\n";
        os << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << y - 5
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt3(value) << "</text>\n";
        os << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << 40 + plot_h + 16
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
              "transform=\"rotate(20 "
           << x + bar_w / 2 << ' ' << 40 + plot_h + 16 << ")\">" << xml_escape(label)
           << "</text>\n";
        x += bar_w + gap;
    }
    os << "</svg>\n";
    return os.str();
}

std::string svg_stacked_chart(const std::string& title,
                              const std::vector<std::string>& groups,
                              const std::vector<std::string>& series,
                              const std::vector<std::vector<double>>& proportions) {
    if (proportions.size() != groups.size())
        throw std::runtime_error("stacked chart: one proportion row per group required");
    static const char* palette[] = {"#c44e52", "#8172b2", "#64b5cd", "#55a868",
                                    "#4c72b0", "#ccb974", "#8c8c8c"};
    const int bar_w = 70, gap = 50, margin = 70, plot_h = 260;
    const int width =
        margin * 2 + static_cast<int>(groups.size()) * (bar_w + gap) + 170;
    const int height = plot_h + 100;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">"
       << xml_escape(title) << "</text>\n";
    int x = margin;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (proportions[g].size() != series.size())
            throw std::runtime_error("stacked chart: proportions/series size mismatch");
        double offset = 0.0;
        for (std::size_t s = 0; s < series.size(); ++s) {
            const double frac = proportions[g][s];
            const int h = static_cast<int>(std::lround(plot_h * frac));
            const int y = 40 + plot_h - static_cast<int>(std::lround(plot_h * (offset + frac)));
            if (h > 0)
                os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w
                   << "\" height=\"" << h << "\" fill=\"" << palette[s % 7] << "\"/>\n";
            offset += frac;
        }
        os << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << 40 + plot_h + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
           << xml_escape(groups[g]) << "</text>\n";
        x += bar_w + gap;
    }
    // legend
    int ly = 46;
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<rect x=\"" << x + 10 << "\" y=\"" << ly - 10
           << "\" width=\"12\" height=\"12\" fill=\"" << palette[s % 7] << "\"/>\n";
        os << "<text x=\"" << x + 28 << "\" y=\"" << ly
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(series[s])
           << "</text>\n";
        ly += 20;
    }
    os << "</svg>\n";
    return os.str();
}

const std::vector<std::string> kEmotionLabels = {"anger", "disgust",  "fear",    "joy",
                                                 "sadness", "surprise", "neutral"};

std::vector<EmotionRecord> load_emotions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open emotions file: " + path);
    std::vector<EmotionRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseError("malformed emotion JSON", line_no);
        EmotionRecord r;
        try {
            r.tweet_id = j.at("tweet_id").get<std::string>();
            r.emotion = j.at("emotion").get<std::string>();
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        if (std::find(kEmotionLabels.begin(), kEmotionLabels.end(), r.emotion) ==
            kEmotionLabels.end())
            throw ParseError("unknown emotion label '" + r.emotion + "'", line_no);
        out.push_back(std::move(r));
    }
    return out;
}

std::map<std::string, std::map<std::string, double>> emotion_distribution(
    const std::vector<TweetRecord>& records, const std::vector<EmotionRecord>& emotions) {
    std::map<std::string, StanceLabel> stance_by_id;
    for (const auto& r : records) {
        if (!r.stance)
            throw std::runtime_error("record '" + r.id + "' has no stance label");
        stance_by_id[r.id] = *r.stance;
    }
    std::map<std::string, std::map<std::string, std::int64_t>> counts;
    std::size_t joined = 0;
    for (const auto& e : emotions) {
        auto it = stance_by_id.find(e.tweet_id);
        if (it == stance_by_id.end())
            throw std::runtime_error("emotion record '" + e.tweet_id +
                                     "' does not join to any corpus id");
        counts[to_string(it->second)][e.emotion] += 1;
        ++joined;
    }
    if (joined == 0) throw std::runtime_error("no joinable records");

    std::map<std::string, std::map<std::string, double>> dist;
    for (const auto& [stance, per_emotion] : counts) {
        std::int64_t total = 0;
        for (const auto& [unused, c] : per_emotion) total += c;
        for (const auto& label : kEmotionLabels) {
            auto it = per_emotion.find(label);
            dist[stance][label] =
                it == per_emotion.end()
                    ? 0.0
                    : static_cast<double>(it->second) / static_cast<double>(total);
        }
    }
    return dist;
}

std::string emotion_csv(const std::map<std::string, std::map<std::string, double>>& dist) {
    std::ostringstream os;
    os << "stance";
    for (const auto& label : kEmotionLabels) os << ',' << label;
    os << '\n';
    char buf[32];
    for (const auto& [stance, row] : dist) {
        os << stance;
        for (const auto& label : kEmotionLabels) {
            const auto it = row.find(label);
            std::snprintf(buf, sizeof(buf), "%.6f", it == row.end() ? 0.0 : it->second);
            os << ',' << buf;
        }
        os << '\n';
    }
    return os.str();
}

void write_manifest(const std::string& dir, const std::vector<std::string>& files) {
    json listed = json::array();
    for (const auto& rel : files) {
        const std::filesystem::path p = std::filesystem::path(dir) / rel;
        std::ifstream in(p, std::ios::binary);
        if (!in) throw std::runtime_error("manifest: missing output file " + p.string());
        std::ostringstream content;
        content << in.rdbuf();
        listed.push_back({{"path", rel}, {"fnv1a64", to_hex(fnv1a64(content.str()))}});
    }
    json j;
    j["files"] = listed;
    std::ofstream out(std::filesystem::path(dir) / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest in " + dir);
    out << j.dump(2) << '\n';
}

}  // namespace stancekit
