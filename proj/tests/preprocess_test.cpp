#include "stancekit/preprocess.hpp"

#include "doctest.h"
#include "stancekit/util.hpp"
#include "test_util.hpp"

using namespace stancekit;

namespace {

const EmojiTable& bundled_emoji() {
    static const EmojiTable table =
        EmojiTable::from_file(testutil::data_file("emoji_names.json"));
    return table;
}

CleaningConfig default_config() {
    CleaningConfig cfg;
    cfg.emoji_table = &bundled_emoji();
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("preprocess");

TEST_CASE("urls, mentions, and hashtags are stripped") {
    auto cfg = default_config();
    CHECK(clean_text("Masks work! https://t.co/abc @who #maskup", cfg) == "Masks work!");
    CHECK(clean_text("plain text stays", cfg) == "plain text stays");
    CHECK(clean_text("", cfg) == "");
}

TEST_CASE("emoji become :name: text in to_text mode") {
    auto cfg = default_config();
    CHECK(clean_text("Get vaccinated \xF0\x9F\x92\x89", cfg) == "Get vaccinated :syringe:");
    CHECK(clean_text("masked \xF0\x9F\x98\xB7 up", cfg) ==
          "masked :face_with_medical_mask: up");
    SUBCASE("remove mode deletes known emoji") {
        cfg.emoji_mode = EmojiMode::remove;
        CHECK(clean_text("Get vaccinated \xF0\x9F\x92\x89", cfg) == "Get vaccinated");
        CHECK(clean_text("hi\xF0\x9F\x92\x89yo", cfg) == "hi yo");
    }
    SUBCASE("keep mode leaves emoji alone") {
        cfg.emoji_mode = EmojiMode::keep;
        CHECK(clean_text("ok \xF0\x9F\x92\x89", cfg) == "ok \xF0\x9F\x92\x89");
    }
    SUBCASE("unknown emoji pass through") {
        // melting face is deliberately not in the bundled table
        CHECK(clean_text("odd \xF0\x9F\xAB\xA0 one", cfg) == "odd \xF0\x9F\xAB\xA0 one");
    }
    SUBCASE("selector sequences match longest-first") {
        CHECK(clean_text("\xE2\x9D\xA4\xEF\xB8\x8F", cfg) == ":red_heart:");
        CHECK(clean_text("\xE2\x9D\xA4", cfg) == ":red_heart:");
    }
}

TEST_CASE("flags can disable individual strips") {
    auto cfg = default_config();
    cfg.strip_hashtags = false;
    CHECK(clean_text("keep #this @not_this", cfg) == "keep #this");
    cfg.strip_mentions = false;
    CHECK(clean_text("keep #this @and_this", cfg) == "keep #this @and_this");
    cfg.strip_urls = false;
    CHECK(clean_text("url https://t.co/x stays", cfg) == "url https://t.co/x stays");
}

TEST_CASE("whitespace collapses and trims") {
    auto cfg = default_config();
    CHECK(clean_text("  a   b\t\tc\n d  ", cfg) == "a b c d");
}

TEST_CASE("mid-token markers are not token starts") {
    auto cfg = default_config();
    CHECK(clean_text("glue#tag stays", cfg) == "glue#tag stays");
    CHECK(clean_text("name@host stays", cfg) == "name@host stays");
    CHECK(clean_text("(@bracketed) stays", cfg) == "(@bracketed) stays");
}

TEST_CASE("clean_text is idempotent on varied inputs") {
    auto cfg = default_config();
    const std::vector<std::string> samples = {
        "Masks work! https://t.co/abc @who #maskup",
        "Get vaccinated \xF0\x9F\x92\x89 now #GetVaxxed",
        "   messy \t whitespace \n everywhere  ",
        "plain",
        "",
        "hearts \xE2\x9D\xA4\xEF\xB8\x8F and \xE2\x9D\xA4 mixed with t.co/x",
    };
    for (const auto& s : samples) {
        const std::string once = clean_text(s, cfg);
        CHECK(clean_text(once, cfg) == once);
    }
}

TEST_CASE("remove mode never grows the text") {
    auto cfg = default_config();
    cfg.emoji_mode = EmojiMode::remove;
    const std::vector<std::string> samples = {
        "Get vaccinated \xF0\x9F\x92\x89",
        "a\xF0\x9F\x92\x89" "b\xF0\x9F\x92\x89" "c",
        "no emoji at all",
        "#tag @m https://t.co/x \xF0\x9F\x98\xB7",
    };
    for (const auto& s : samples)
        CHECK(utf8_length(clean_text(s, cfg)) <= utf8_length(s));
}

namespace {

TweetRecord rec(const std::string& id, const std::string& text) {
    TweetRecord r;
    r.id = id;
    r.raw_text = text;
    r.claim = ClaimTopic{"vaccine_mandates", canonical_claim_text("vaccine_mandates")};
    return r;
}

}  // namespace

TEST_CASE("filter partitions input and dedups case-insensitively") {
    auto cfg = default_config();
    cfg.min_length_chars = 10;
    const std::vector<TweetRecord> input = {
        rec("a", "a perfectly long tweet body"),
        rec("b", "A PERFECTLY LONG TWEET BODY"),
        rec("c", "tiny"),
        rec("d", "#only @tags https://t.co/x"),
        rec("e", "another distinct long tweet"),
    };
    FilterResult result = filter_corpus(input, cfg);
    CHECK(result.kept.size() + result.dropped.size() == input.size());
    REQUIRE(result.kept.size() == 2);
    CHECK(result.kept[0].id == "a");
    CHECK(result.kept[1].id == "e");
    CHECK(*result.kept[0].clean_text == "a perfectly long tweet body");
    REQUIRE(result.dropped.size() == 3);
    CHECK(result.dropped[0] == std::pair<std::string, DropReason>{"b", DropReason::duplicate});
    CHECK(result.dropped[1] == std::pair<std::string, DropReason>{"c", DropReason::too_short});
    CHECK(result.dropped[2] ==
          std::pair<std::string, DropReason>{"d", DropReason::empty_after_cleaning});
}

TEST_CASE("149 characters is short at the default threshold, 150 is not") {
    auto cfg = default_config();
    const std::string pad(149, 'x');
    FilterResult r149 = filter_corpus({rec("s", pad)}, cfg);
    CHECK(r149.kept.empty());
    REQUIRE(r149.dropped.size() == 1);
    CHECK(r149.dropped[0].second == DropReason::too_short);

    FilterResult r150 = filter_corpus({rec("k", pad + "y")}, cfg);
    CHECK(r150.kept.size() == 1);
}

TEST_CASE("length is measured on cleaned text in code points") {
    auto cfg = default_config();
    cfg.min_length_chars = 5;
    // four code points after cleaning, despite the long raw URL
    FilterResult r = filter_corpus({rec("u", "abcd https://t.co/padpadpadpad")}, cfg);
    REQUIRE(r.dropped.size() == 1);
    CHECK(r.dropped[0].second == DropReason::too_short);
}

TEST_CASE("empty input filters to empty output") {
    auto cfg = default_config();
    FilterResult r = filter_corpus({}, cfg);
    CHECK(r.kept.empty());
    CHECK(r.dropped.empty());
}

TEST_CASE("golden fixture reproduces byte-identical outputs") {
    const std::string golden_dir = STANCEKIT_GOLDEN_DIR;
    auto records = load_corpus(golden_dir + "/preprocess_input.jsonl");
    REQUIRE(records.size() == 50);
    auto cfg = default_config();
    FilterResult result = filter_corpus(records, cfg);

    std::string kept_text;
    for (const auto& r : result.kept) kept_text += record_to_json_line(r) + "\n";
    std::string dropped_text;
    for (const auto& [id, reason] : result.dropped)
        dropped_text += "{\"id\":\"" + id + "\",\"reason\":\"" + to_string(reason) + "\"}\n";

    CHECK(kept_text == testutil::read_file(golden_dir + "/preprocess_kept.golden.jsonl"));
    CHECK(dropped_text ==
          testutil::read_file(golden_dir + "/preprocess_dropped.golden.jsonl"));

    // idempotence across the whole fixture
    for (const auto& r : result.kept) CHECK(clean_text(*r.clean_text, cfg) == *r.clean_text);

    // determinism: a second pass is bit-identical
    FilterResult again = filter_corpus(records, cfg);
    REQUIRE(again.kept.size() == result.kept.size());
    for (std::size_t i = 0; i < again.kept.size(); ++i)
        CHECK(*again.kept[i].clean_text == *result.kept[i].clean_text);
}

TEST_SUITE_END();
