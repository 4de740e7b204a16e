#include "stancekit/report.hpp"

#include <cmath>

#include "doctest.h"
#include "stancekit/fixtures.hpp"
#include "test_util.hpp"

using namespace stancekit;

TEST_SUITE_BEGIN("report");

namespace {

ResultEntry entry(const std::string& model, const std::string& mode, Task task, double f1) {
    ResultEntry e;
    e.model = model;
    e.mode = mode;
    e.task = task;
    std::map<std::string, ClaimScore> claims;
    claims["masks"].f1_rel = f1;
    e.report = aggregate_over_claims(claims, task);
    return e;
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("markdown table has the paired mode columns and exact headers") {
    const std::vector<ResultEntry> entries = {
        entry("dual-view", "tweets", Task::stance, 0.61),
        entry("dual-view", "tweets", Task::premise, 0.72),
        entry("dual-view", "tweets_claims", Task::stance, 0.58),
        entry("dual-view", "tweets_claims", Task::premise, 0.68),
    };
    const std::string md = results_markdown(entries);
    CHECK(count_occurrences(md, "F1 Stance") == 2);
    CHECK(count_occurrences(md, "F1 Premise") == 2);
    CHECK(md.find("| dual-view | 0.610 | 0.720 | 0.580 | 0.680 |") != std::string::npos);
    CHECK(md.find("Tweets + Claims") != std::string::npos);

    SUBCASE("missing cells render as dashes") {
        const std::string partial = results_markdown({entries[0]});
        CHECK(partial.find("| dual-view | 0.610 | - | - | - |") != std::string::npos);
    }
}

TEST_CASE("single reports emit in all three formats") {
    ResultEntry e = entry("dual-view", "tweets", Task::stance, 0.61);
    e.report.model_name = "dual-view";
    e.report.mode_name = "tweets";
    CHECK(emit_report(e.report, ReportFormat::json).find("\"aggregate_f1\"") !=
          std::string::npos);
    CHECK(emit_report(e.report, ReportFormat::csv).rfind("claim,class", 0) == 0);
    const std::string md = emit_report(e.report, ReportFormat::markdown);
    CHECK(md.find("| dual-view | 0.610 | - | - | - |") != std::string::npos);
    CHECK(report_format_from_string("markdown") == ReportFormat::markdown);
    CHECK_THROWS(report_format_from_string("pdf"));
}

TEST_CASE("bar charts are well-formed standalone svg") {
    const std::string svg = svg_bar_chart("F1 per model", {{"a", 0.4}, {"b", 0.75}});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "<rect") == 2);
    CHECK(svg.find("0.750") != std::string::npos);
    CHECK(svg.find("F1 per model") != std::string::npos);
}

TEST_CASE("stacked charts cover each group and escape labels") {
    const std::string svg = svg_stacked_chart(
        "dist", {"favor", "against"}, {"anger", "joy <3"},
        {{0.25, 0.75}, {1.0, 0.0}});
    CHECK(svg.find("favor") != std::string::npos);
    CHECK(svg.find("joy &lt;3") != std::string::npos);
    CHECK_THROWS(svg_stacked_chart("bad", {"a"}, {"x"}, {{0.5, 0.5}}));
}

TEST_CASE("emotion distributions are per-stance simplices") {
    const auto vaccines = fixtures::synth_split(fixtures::reference_split("vaccines"), 3);
    const auto emotions = fixtures::synth_emotions(vaccines, 3);
    const auto dist = emotion_distribution(vaccines, emotions);
    REQUIRE(dist.size() == 3);  // favor, against, neither all present
    for (const auto& [stance, row] : dist) {
        double sum = 0.0;
        for (const auto& label : kEmotionLabels) sum += row.at(label);
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }

    // independent tally for one stance/emotion cell
    std::map<std::string, std::string> emo_by_id;
    for (const auto& e : emotions) emo_by_id[e.tweet_id] = e.emotion;
    std::int64_t against_total = 0, against_anger = 0;
    for (const auto& r : vaccines) {
        if (*r.stance != StanceLabel::against) continue;
        ++against_total;
        if (emo_by_id.at(r.id) == "anger") ++against_anger;
    }
    CHECK(dist.at("against").at("anger") ==
          doctest::Approx(static_cast<double>(against_anger) /
                          static_cast<double>(against_total))
              .epsilon(1e-12));
}

TEST_CASE("single-emotion corpora concentrate the whole mass") {
    auto records = fixtures::synth_split(fixtures::reference_split("validation"), 4);
    std::vector<EmotionRecord> all_anger;
    for (const auto& r : records) all_anger.push_back({r.id, "anger"});
    const auto dist = emotion_distribution(records, all_anger);
    for (const auto& [stance, row] : dist) CHECK(row.at("anger") == 1.0);
}

TEST_CASE("unjoinable and empty emotion files are errors") {
    auto records = fixtures::synth_split(fixtures::reference_split("validation"), 4);
    CHECK_THROWS_WITH(emotion_distribution(records, {{"ghost-id", "anger"}}),
                      doctest::Contains("ghost-id"));
    CHECK_THROWS_WITH(emotion_distribution(records, {}), doctest::Contains("no joinable"));
}

TEST_CASE("manifests hash the listed files and omit timestamps") {
    testutil::TempDir dir("manifest");
    testutil::write_file(dir.file("a.txt"), "alpha");
    testutil::write_file(dir.file("b.txt"), "beta");
    write_manifest(dir.path().string(), {"a.txt", "b.txt"});
    const std::string manifest = testutil::read_file(dir.file("manifest.json"));
    CHECK(manifest.find("a.txt") != std::string::npos);
    CHECK(manifest.find("fnv1a64") != std::string::npos);
    CHECK(manifest.find("time") == std::string::npos);

    write_manifest(dir.path().string(), {"a.txt", "b.txt"});
    CHECK(testutil::read_file(dir.file("manifest.json")) == manifest);  // idempotent

    CHECK_THROWS(write_manifest(dir.path().string(), {"missing.txt"}));
}

TEST_SUITE_END();
