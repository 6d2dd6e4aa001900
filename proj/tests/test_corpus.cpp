#include "doctest.h"

#include <map>
#include <random>
#include <regex>
#include <set>

#include "depkit/corpus/anchor.hpp"
#include "depkit/corpus/build.hpp"
#include "depkit/corpus/chat_format.hpp"
#include "depkit/corpus/emoji.hpp"
#include "depkit/corpus/io.hpp"
#include "depkit/corpus/normalize.hpp"
#include "depkit/corpus/split.hpp"
#include "depkit/util/strings.hpp"
#include "support.hpp"

using namespace depkit;
using corpus::Label;
using corpus::LabelSource;

namespace {

// Regex-based reference normalizer, kept independent of the implementation.
std::string reference_normalize(const std::string& raw) {
    std::string s = std::regex_replace(raw, std::regex(R"(https?://\S+)", std::regex::icase),
                                       "<URL>");
    s = std::regex_replace(s, std::regex(R"((^|\s)www\.\S+)", std::regex::icase), "$1<URL>");
    s = std::regex_replace(s, std::regex(R"((^|[^A-Za-z0-9_>])@\w+)"), "$1<USER>");
    s = std::regex_replace(s, std::regex(R"(\s+)"), " ");
    s = std::regex_replace(s, std::regex(R"(^ | $)"), "");
    return s;
}

util::TimeWindow december_2016() {
    return {util::parse_iso8601_utc("2016-12-01T00:00:00Z"),
            util::parse_iso8601_utc("2017-01-01T00:00:00Z")};
}

util::UnixSeconds in_window() { return util::parse_iso8601_utc("2016-12-15T12:00:00Z"); }
util::UnixSeconds out_of_window() { return util::parse_iso8601_utc("2018-06-01T12:00:00Z"); }

corpus::Post make_post(const std::string& id, const std::string& author, const std::string& text,
                       util::UnixSeconds at) {
    return corpus::Post{id, author, text, at};
}

corpus::EmojiSentimentLibrary test_library() {
    corpus::EmojiSentimentLibrary lib;
    lib.add("\xF0\x9F\x99\x82", +1);  // slightly smiling face
    lib.add("\xF0\x9F\x98\xAD", -1);  // loudly crying face
    lib.add("\xF0\x9F\x98\x90", 0);   // neutral face
    return lib;
}

}  // namespace

TEST_CASE("normalize_text matches its examples") {
    CHECK(corpus::normalize_text("") == "");
    CHECK(corpus::normalize_text("feeling low https://t.co/x @bob") == "feeling low <URL> <USER>");
    CHECK(corpus::normalize_text("plain text") == "plain text");
    CHECK(corpus::normalize_text("  spaced\t\nout  ") == "spaced out");
    CHECK(corpus::normalize_text("see www.example.com now") == "see <URL> now");
    CHECK(corpus::normalize_text("mail me a@b.com") == "mail me a@b.com");  // not a mention
    CHECK(corpus::normalize_text("Case KEPT 😭") == "Case KEPT 😭");
}

TEST_CASE("normalize_text agrees with the reference normalizer") {
    const std::vector<std::string> cases = {
        "",
        "plain text",
        "feeling low https://t.co/x @bob",
        "http://a.example/path?q=1 trailing",
        "@alice @bob hi",
        "double  spaces\tand tabs",
        "ends with url https://x.y",
        "www.site.org at start",
        "not.www.site inside",
        "@_underscore and @digits123",
        "emoji 😭 stays",
        "a@b.com is mail",
        "HTTPS://UPPER.CASE/path",
    };
    for (const auto& c : cases) {
        CAPTURE(c);
        CHECK(corpus::normalize_text(c) == reference_normalize(c));
    }
}

TEST_CASE("normalize_text is idempotent") {
    std::mt19937_64 gen(4242);
    const std::vector<std::string> pieces = {"hello",      "https://t.co/abc", "@user",
                                             "😭",         "www.x.org",        "plain",
                                             "<URL>",      "<USER>",           "  ",
                                             "depressed?", "a@b.com"};
    for (int i = 0; i < 300; ++i) {
        std::string text;
        size_t n = 1 + gen() % 8;
        for (size_t k = 0; k < n; ++k) {
            text += pieces[gen() % pieces.size()];
            if (gen() & 1) text += ' ';
        }
        std::string once = corpus::normalize_text(text);
        CHECK(corpus::normalize_text(once) == once);
    }
}

TEST_CASE("classify_anchor follows D1 > D3 > D2 precedence") {
    auto rules = corpus::default_anchor_rules();
    auto window = december_2016();

    CHECK(corpus::classify_anchor("I'm diagnosed with depression", in_window(), rules, window) ==
          LabelSource::D1_DEPRESSED);
    CHECK(corpus::classify_anchor("lovely sunny morning", in_window(), rules, window) ==
          LabelSource::D2_NON_DEPRESSED);
    CHECK(corpus::classify_anchor("this weather is depressing", in_window(), rules, window) ==
          LabelSource::D3_CANDIDATE);

    // diagnosis phrase wins even though "depress" occurs
    CHECK(corpus::classify_anchor("I was diagnosed with depression and it's been depressing",
                                  in_window(), rules, window) == LabelSource::D1_DEPRESSED);
    // case-insensitive
    CHECK(corpus::classify_anchor("i'M DIAGNOSED WITH DEPRESSION!!!", out_of_window(), rules,
                                  window) == LabelSource::D1_DEPRESSED);
    // outside window, no term: no label at all
    CHECK(corpus::classify_anchor("lovely sunny morning", out_of_window(), rules, window) ==
          LabelSource::NONE);
    // D1 applies regardless of window, D3 too
    CHECK(corpus::classify_anchor("so depressing", out_of_window(), rules, window) ==
          LabelSource::D3_CANDIDATE);

    CHECK_THROWS_AS(corpus::classify_anchor("   ", in_window(), rules, window),
                    std::invalid_argument);
}

TEST_CASE("classify_anchor returns exactly one source for arbitrary text") {
    auto rules = corpus::default_anchor_rules();
    auto window = december_2016();
    std::mt19937_64 gen(77);
    const std::vector<std::string> words = {"sun",    "rain",      "depress", "depressing",
                                            "happy",  "diagnosed", "with",    "depression",
                                            "i'm",    "coffee",    "i",       "was",
                                            ".",      "!!",        "😭"};
    for (int i = 0; i < 1000; ++i) {
        std::string text;
        size_t n = 1 + gen() % 10;
        for (size_t k = 0; k < n; ++k) {
            text += words[gen() % words.size()];
            text += ' ';
        }
        auto at = (gen() & 1) ? in_window() : out_of_window();
        auto source = corpus::classify_anchor(text, at, rules, window);
        bool has_diagnosis = false;
        for (const auto& p : rules.diagnosis_patterns) {
            has_diagnosis = has_diagnosis || util::contains_ci(text, p);
        }
        if (has_diagnosis) {
            REQUIRE(source == LabelSource::D1_DEPRESSED);
        } else if (util::contains_ci(text, "depress")) {
            REQUIRE(source == LabelSource::D3_CANDIDATE);
        } else {
            REQUIRE((source == LabelSource::D2_NON_DEPRESSED || source == LabelSource::NONE));
        }
    }
}

TEST_CASE("anchor rule validation") {
    corpus::AnchorRuleSet rules;
    rules.diagnosis_patterns = {};
    CHECK_THROWS_AS(corpus::validate_rules(rules), std::invalid_argument);
    rules = corpus::default_anchor_rules();
    rules.exclusion_substring = "other";
    CHECK_THROWS_AS(corpus::validate_rules(rules), std::invalid_argument);
    CHECK_NOTHROW(corpus::validate_rules(corpus::default_anchor_rules()));
}

TEST_CASE("annotate_emojis counts and sums") {
    auto lib = test_library();
    auto none = corpus::annotate_emojis("no emoji here", lib);
    CHECK(none.count == 0);
    CHECK(none.polarity_sum == 0);

    auto two_sad = corpus::annotate_emojis("😭😭", lib);
    CHECK(two_sad.count == 2);
    CHECK(two_sad.polarity_sum == -2);

    auto cancel = corpus::annotate_emojis("🙂😭", lib);
    CHECK(cancel.count == 2);
    CHECK(cancel.polarity_sum == 0);

    // unknown emoji: counted once, contributes nothing to the sum
    auto unknown = corpus::annotate_emojis("🚀", lib);
    CHECK(unknown.count == 1);
    CHECK(unknown.polarity_sum == 0);

    auto mixed = corpus::annotate_emojis("sad 😭 and unknown 🚀 and happy 🙂", lib);
    CHECK(mixed.count == 3);
    CHECK(mixed.polarity_sum == 0);
}

TEST_CASE("emoji polarity sum is additive over concatenation") {
    auto lib = test_library();
    std::mt19937_64 gen(11);
    const std::vector<std::string> atoms = {"🙂", "😭", "😐", "🚀", "word", " ", "!"};
    for (int i = 0; i < 300; ++i) {
        std::string a, b;
        for (size_t k = 0; k < gen() % 6; ++k) a += atoms[gen() % atoms.size()];
        for (size_t k = 0; k < gen() % 6; ++k) b += atoms[gen() % atoms.size()];
        auto whole = corpus::annotate_emojis(a + b, lib);
        auto left = corpus::annotate_emojis(a, lib);
        auto right = corpus::annotate_emojis(b, lib);
        REQUIRE(whole.polarity_sum == left.polarity_sum + right.polarity_sum);
        REQUIRE(whole.count == left.count + right.count);
    }
}

TEST_CASE("emoji library rejects bad entries") {
    corpus::EmojiSentimentLibrary lib;
    CHECK_THROWS_AS(lib.add("🙂", 2), std::invalid_argument);
    CHECK_THROWS_AS(lib.add("word", 1), std::invalid_argument);
    CHECK_THROWS_AS(lib.add("", 0), std::invalid_argument);
    lib.add("🙂", 1);
    CHECK_THROWS_AS(lib.add("🙂", -1), std::invalid_argument);  // duplicate
}

TEST_CASE("emoji library TSV loading") {
    testsupport::TempDir tmp;
    const std::string path = tmp.file("emoji.tsv");
    testsupport::spit(path, "🙂\t1\n😭\t-1\n# comment\n\n😐\t0\n");
    auto lib = corpus::EmojiSentimentLibrary::load_tsv(path);
    CHECK(lib.size() == 3);

    testsupport::spit(path, "🙂\t1\nbroken line\n");
    CHECK_THROWS_WITH_AS(corpus::EmojiSentimentLibrary::load_tsv(path),
                         doctest::Contains(":2"), std::runtime_error);
}

TEST_CASE("build_corpus labels, queues, and counts") {
    auto rules = corpus::default_anchor_rules();
    auto lib = test_library();
    auto window = december_2016();

    SUBCASE("one user, one diagnosis post") {
        corpus::UserRecord u{"u1", {make_post("p1", "u1", "I'm diagnosed with depression", in_window())}};
        auto result = corpus::build_corpus(std::vector{u}, rules, window, lib);
        REQUIRE(result.corpus.examples.size() == 1);
        CHECK(result.corpus.examples[0].label == Label::DEPRESSED);
        CHECK(result.corpus.examples[0].source == LabelSource::D1_DEPRESSED);
        CHECK(result.review_queue.empty());
    }

    SUBCASE("3 D1 + 2 D2 + 1 unreviewed D3") {
        std::vector<corpus::UserRecord> users;
        users.push_back({"a",
                         {make_post("a1", "a", "i'm diagnosed with depression", in_window()),
                          make_post("a2", "a", "I am diagnosed with depression", in_window()),
                          make_post("a3", "a", "i was diagnosed with depression", in_window())}});
        users.push_back({"b",
                         {make_post("b1", "b", "nice walk today", in_window()),
                          make_post("b2", "b", "coffee time 🙂", in_window())}});
        users.push_back({"c", {make_post("c1", "c", "so depressing outside", in_window())}});
        auto result = corpus::build_corpus(users, rules, window, lib);
        CHECK(result.corpus.examples.size() == 5);
        CHECK(result.stats.d1_auto_labeled == 3);
        CHECK(result.stats.d2_auto_labeled == 2);
        CHECK(result.stats.d3_queued == 1);
        REQUIRE(result.review_queue.size() == 1);
        CHECK(result.review_queue[0].id == "c1");
    }

    SUBCASE("reviewed D3 enters the corpus with the human label") {
        corpus::UserRecord u{"c", {make_post("c1", "c", "so depressing outside", in_window())}};
        std::map<std::string, Label> reviewed{{"c1", Label::NON_DEPRESSED}};
        auto result = corpus::build_corpus(std::vector{u}, rules, window, lib, reviewed);
        REQUIRE(result.corpus.examples.size() == 1);
        CHECK(result.corpus.examples[0].source == LabelSource::D3_CANDIDATE);
        CHECK(result.corpus.examples[0].label == Label::NON_DEPRESSED);
        CHECK(result.review_queue.empty());
    }

    SUBCASE("empty stream and empty users") {
        CHECK_THROWS_AS(corpus::build_corpus(std::vector<corpus::UserRecord>{}, rules, window, lib),
                        std::invalid_argument);
        corpus::UserRecord empty{"e", {}};
        corpus::UserRecord one{"u", {make_post("p", "u", "hello", in_window())}};
        auto result = corpus::build_corpus(std::vector{empty, one}, rules, window, lib);
        CHECK(result.stats.users_skipped_empty == 1);
        CHECK(result.corpus.examples.size() == 1);
    }

    SUBCASE("duplicate post ids are rejected by name") {
        corpus::UserRecord u1{"u1", {make_post("dup", "u1", "hello", in_window())}};
        corpus::UserRecord u2{"u2", {make_post("dup", "u2", "again", in_window())}};
        CHECK_THROWS_WITH_AS(corpus::build_corpus(std::vector{u1, u2}, rules, window, lib),
                             doctest::Contains("dup"), std::invalid_argument);
    }

    SUBCASE("normalized text and emoji fields are populated") {
        corpus::UserRecord u{
            "u", {make_post("p", "u", "sad 😭 https://t.co/x  @friend", in_window())}};
        auto result = corpus::build_corpus(std::vector{u}, rules, window, lib);
        const auto& ex = result.corpus.examples[0];
        CHECK(ex.normalized_text == "sad 😭 <URL> <USER>");
        CHECK(ex.emoji_count == 1);
        CHECK(ex.emoji_polarity_sum == -1);
    }
}

TEST_CASE("auto-label soundness holds over fuzzed corpora") {
    auto rules = corpus::default_anchor_rules();
    auto lib = test_library();
    auto window = december_2016();
    std::mt19937_64 gen(5150);
    const std::vector<std::string> words = {"rain",  "sun",  "depress",   "depressing",
                                            "happy", "walk", "depressed", "coffee"};

    std::vector<corpus::UserRecord> users;
    for (int i = 0; i < 1000; ++i) {
        std::string text;
        if (gen() % 10 == 0) text += "I'm diagnosed with depression ";
        size_t n = 1 + gen() % 6;
        for (size_t k = 0; k < n; ++k) {
            text += words[gen() % words.size()];
            text += ' ';
        }
        auto at = (gen() & 1) ? in_window() : out_of_window();
        std::string id = "f" + std::to_string(i);
        users.push_back({id, {make_post(id + "-p", id, text, at)}});
    }
    auto result = corpus::build_corpus(users, rules, window, lib);
    for (const auto& ex : result.corpus.examples) {
        REQUIRE(ex.source != LabelSource::NONE);
        if (ex.source == LabelSource::D1_DEPRESSED) REQUIRE(ex.label == Label::DEPRESSED);
        if (ex.source == LabelSource::D2_NON_DEPRESSED) REQUIRE(ex.label == Label::NON_DEPRESSED);
    }
}

namespace {

corpus::LabeledCorpus tiny_corpus(size_t depressed, size_t non_depressed) {
    corpus::LabeledCorpus c;
    char buf[16];
    for (size_t i = 0; i < depressed + non_depressed; ++i) {
        std::snprintf(buf, sizeof(buf), "p%03zu", i);
        corpus::LabeledExample ex;
        ex.post = corpus::Post{buf, "u", "text " + std::to_string(i), in_window()};
        ex.label = i < depressed ? Label::DEPRESSED : Label::NON_DEPRESSED;
        ex.source = i < depressed ? LabelSource::D1_DEPRESSED : LabelSource::D2_NON_DEPRESSED;
        ex.normalized_text = ex.post.text;
        c.examples.push_back(ex);
    }
    return c;
}

}  // namespace

TEST_CASE("split_corpus: stratified 5/5 at (0.8,0.1,0.1)") {
    auto corpus = corpus::split_corpus(tiny_corpus(5, 5), {0.8, 0.1, 0.1}, 7);
    std::map<corpus::Split, std::map<Label, int>> counts;
    for (const auto& ex : corpus.examples) {
        counts[corpus.splits.at(ex.post.id)][ex.label]++;
    }
    auto total = [&](corpus::Split s) {
        return counts[s][Label::DEPRESSED] + counts[s][Label::NON_DEPRESSED];
    };
    CHECK(total(corpus::Split::TRAIN) == 8);
    CHECK(total(corpus::Split::VAL) == 1);
    CHECK(total(corpus::Split::TEST) == 1);
    CHECK(counts[corpus::Split::TRAIN][Label::DEPRESSED] >= 4);
    CHECK(counts[corpus::Split::TRAIN][Label::NON_DEPRESSED] >= 4);
    CHECK(corpus.splits.size() == 10);
}

TEST_CASE("split_corpus enumerated against the documented procedure") {
    // per-class largest remainder with global capacity: both classes place
    // floor(n_c * r) first; the leftover goes to the open split with the
    // largest fractional part, earlier splits first on ties.
    auto corpus = corpus::split_corpus(tiny_corpus(6, 4), {0.5, 0.25, 0.25}, 3);
    // global: 10 -> 5/2.5/2.5 -> floors 5/2/2, remainder to VAL (tie, earlier) -> 5/3/2
    // class depressed (6): 3/1.5/1.5 -> floors 3/1/1, +1 to VAL -> 3/2/1
    // class non-depressed (4, last): leftover capacity -> 2/1/1
    std::map<corpus::Split, std::map<Label, int>> counts;
    for (const auto& ex : corpus.examples) counts[corpus.splits.at(ex.post.id)][ex.label]++;
    CHECK(counts[corpus::Split::TRAIN][Label::DEPRESSED] == 3);
    CHECK(counts[corpus::Split::VAL][Label::DEPRESSED] == 2);
    CHECK(counts[corpus::Split::TEST][Label::DEPRESSED] == 1);
    CHECK(counts[corpus::Split::TRAIN][Label::NON_DEPRESSED] == 2);
    CHECK(counts[corpus::Split::VAL][Label::NON_DEPRESSED] == 1);
    CHECK(counts[corpus::Split::TEST][Label::NON_DEPRESSED] == 1);
}

TEST_CASE("split_corpus errors") {
    CHECK_THROWS_AS(corpus::split_corpus(tiny_corpus(5, 5), {0.5, 0.5, 0.1}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(corpus::split_corpus(tiny_corpus(5, 5), {0.8, 0.1, -0.1}, 1),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(corpus::split_corpus(tiny_corpus(2, 8), {0.8, 0.1, 0.1}, 1),
                         doctest::Contains("depressed"), std::invalid_argument);
}

TEST_CASE("split_corpus keeps every split within one example of global proportions") {
    std::mt19937_64 gen(606);
    for (int round = 0; round < 200; ++round) {
        size_t n_dep = 3 + gen() % 150;
        size_t n_non = 3 + gen() % 150;
        double a = 0.5 + (gen() % 40) * 0.01;
        double b = (1.0 - a) * (0.2 + (gen() % 60) * 0.01);
        auto corpus = corpus::split_corpus(tiny_corpus(n_dep, n_non), {a, b, 1.0 - a - b},
                                           std::int64_t(gen()));
        std::map<corpus::Split, double> dep_count, size;
        for (const auto& ex : corpus.examples) {
            auto s = corpus.splits.at(ex.post.id);
            size[s] += 1;
            dep_count[s] += ex.label == Label::DEPRESSED;
        }
        const double global = double(n_dep) / double(n_dep + n_non);
        for (const auto& [s, n] : size) {
            CAPTURE(n_dep);
            CAPTURE(n_non);
            REQUIRE(std::fabs(dep_count[s] - global * n) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("split_corpus is deterministic and a partition") {
    auto a = corpus::split_corpus(tiny_corpus(40, 30), {0.8, 0.1, 0.1}, 123);
    auto b = corpus::split_corpus(tiny_corpus(40, 30), {0.8, 0.1, 0.1}, 123);
    CHECK(a.splits == b.splits);
    CHECK(a.split_seed == 123);

    auto c = corpus::split_corpus(tiny_corpus(40, 30), {0.8, 0.1, 0.1}, 124);
    CHECK(a.splits != c.splits);  // different seed, different arrangement

    std::set<std::string> ids;
    for (const auto& ex : a.examples) ids.insert(ex.post.id);
    std::set<std::string> assigned;
    for (const auto& [id, _] : a.splits) assigned.insert(id);
    CHECK(ids == assigned);
}

TEST_CASE("chat export: counts, golden bytes, and round-trip") {
    auto corpus = corpus::split_corpus(tiny_corpus(5, 5), {0.8, 0.1, 0.1}, 7);
    infer::PromptTemplate tmpl;
    testsupport::TempDir tmp;

    SUBCASE("count identity and file shape") {
        const std::string path = tmp.file("train.jsonl");
        auto stats = corpus::export_chat_jsonl(corpus, corpus::Split::TRAIN, tmpl, path);
        CHECK(stats.written == 8);
        CHECK(stats.skipped_empty == 0);
        auto content = testsupport::slurp(path);
        CHECK(std::count(content.begin(), content.end(), '\n') == 8);
        CHECK(content.back() == '\n');
    }

    SUBCASE("round-trip is a fixed point") {
        const std::string path1 = tmp.file("a.jsonl");
        const std::string path2 = tmp.file("b.jsonl");
        corpus::export_chat_jsonl(corpus, corpus::Split::TRAIN, tmpl, path1);
        auto records = corpus::read_chat_jsonl(path1);
        std::string rewritten;
        for (const auto& r : records) rewritten += corpus::chat_record_line(r) + "\n";
        testsupport::spit(path2, rewritten);
        CHECK(testsupport::slurp(path1) == testsupport::slurp(path2));
    }

    SUBCASE("examples with empty normalized text are skipped and counted") {
        auto with_empty = corpus;
        with_empty.examples[0].normalized_text = "";  // an id that landed in TRAIN or not
        size_t in_train = 0;
        for (const auto& ex : with_empty.examples) {
            if (with_empty.splits.at(ex.post.id) == corpus::Split::TRAIN) {
                in_train += 1;
            }
        }
        bool first_in_train =
            with_empty.splits.at(with_empty.examples[0].post.id) == corpus::Split::TRAIN;
        const std::string path = tmp.file("skip.jsonl");
        auto stats = corpus::export_chat_jsonl(with_empty, corpus::Split::TRAIN, tmpl, path);
        CHECK(stats.written + stats.skipped_empty == in_train);
        CHECK(stats.skipped_empty == (first_in_train ? 1 : 0));
    }

    SUBCASE("malformed lines are reported with their line number") {
        const std::string path = tmp.file("bad.jsonl");
        testsupport::spit(path,
                          R"({"messages":[{"role":"system","content":"s"},{"role":"user","content":"u"},{"role":"assistant","content":"a"}]})"
                          "\nnot json\n");
        CHECK_THROWS_WITH_AS(corpus::validate_chat_file(path), doctest::Contains(":2"),
                             std::runtime_error);
    }
}

TEST_CASE("chat export golden fixture") {
    auto golden_path = testsupport::fixture_path("golden/chat_export.jsonl");
    corpus::LabeledCorpus c;
    corpus::LabeledExample e1, e2, e3;
    e1.post = {"g1", "ua", "i feel empty", in_window()};
    e1.label = Label::DEPRESSED;
    e1.normalized_text = "i feel empty";
    e2.post = {"g2", "ub", "great day for a walk 🙂", in_window()};
    e2.label = Label::NON_DEPRESSED;
    e2.normalized_text = "great day for a walk 🙂";
    e3.post = {"g3", "uc", "crying again 😭😭", in_window()};
    e3.label = Label::DEPRESSED;
    e3.normalized_text = "crying again 😭😭";
    c.examples = {e1, e2, e3};
    for (const auto& ex : c.examples) c.splits.emplace(ex.post.id, corpus::Split::TRAIN);

    testsupport::TempDir tmp;
    const std::string out = tmp.file("golden.jsonl");
    auto stats = corpus::export_chat_jsonl(c, corpus::Split::TRAIN, infer::PromptTemplate{}, out);
    CHECK(stats.written == 3);
    CHECK(testsupport::slurp(out) == testsupport::slurp(golden_path));
}

TEST_CASE("posts and corpus files round-trip") {
    testsupport::TempDir tmp;
    const std::string posts_path = tmp.file("posts.jsonl");
    testsupport::spit(
        posts_path,
        R"({"id":"p2","author_id":"u1","created_at":"2016-12-10T08:00:00Z","text":"second"})"
        "\n"
        R"({"id":"p1","author_id":"u1","created_at":"2016-12-09T08:00:00Z","text":"first"})"
        "\n"
        R"({"id":"q1","author_id":"u2","created_at":"2016-12-11T08:00:00Z","text":"other user"})"
        "\n");
    auto users = corpus::read_posts_jsonl(posts_path);
    REQUIRE(users.size() == 2);
    CHECK(users[0].author_id == "u1");
    CHECK(users[0].posts[0].id == "p1");  // sorted by created_at
    CHECK(users[0].posts[1].id == "p2");

    const std::string bad_path = tmp.file("bad_posts.jsonl");
    testsupport::spit(bad_path, R"({"id":"x","author_id":"u","created_at":"nope","text":"t"})"
                                "\n");
    CHECK_THROWS_WITH_AS(corpus::read_posts_jsonl(bad_path), doctest::Contains(":1"),
                         std::runtime_error);

    auto rules = corpus::default_anchor_rules();
    auto built = corpus::build_corpus(users, rules, december_2016(), test_library());
    auto split = corpus::split_corpus(tiny_corpus(4, 4), {0.5, 0.25, 0.25}, 9);
    const std::string corpus_path = tmp.file("corpus.jsonl");
    corpus::write_corpus_jsonl(split, corpus_path);
    auto reread = corpus::read_corpus_jsonl(corpus_path);
    CHECK(reread.examples.size() == split.examples.size());
    CHECK(reread.splits == split.splits);
    CHECK(reread.split_seed == split.split_seed);
    (void)built;
}

TEST_CASE("corpus reader rejects duplicate example ids") {
    testsupport::TempDir tmp;
    const std::string path = tmp.file("dup.jsonl");
    const std::string line =
        R"({"id":"same","author_id":"u","created_at":"2016-12-05T00:00:00Z","text":"t",)"
        R"("normalized_text":"t","label":"depressed","source":"d1_depressed"})";
    testsupport::spit(path, line + "\n" + line + "\n");
    CHECK_THROWS_WITH_AS(corpus::read_corpus_jsonl(path), doctest::Contains("same"),
                         std::runtime_error);
}

TEST_CASE("d3 labels TSV parsing") {
    testsupport::TempDir tmp;
    const std::string path = tmp.file("d3.tsv");
    testsupport::spit(path, "c1\tdepressed\nc2\tnon_depressed\n");
    auto labels = corpus::read_d3_labels_tsv(path);
    CHECK(labels.size() == 2);
    CHECK(labels.at("c1") == Label::DEPRESSED);

    testsupport::spit(path, "c1\tmaybe\n");
    CHECK_THROWS_WITH_AS(corpus::read_d3_labels_tsv(path), doctest::Contains(":1"),
                         std::runtime_error);
}
