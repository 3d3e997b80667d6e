#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>

#include "emoforge/corpus.hpp"
#include "support/checks.hpp"
#include "support/fixture.hpp"

using namespace emoforge;
using namespace emoforge::testsupport;

namespace {

void write(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("load_tweeteval parses parallel line files") {
    const std::string dir = temp_dir("corpus_load");
    write(dir + "/t.txt",
          "My roommate is furious\n"
          "Worry is a down payment on a problem you may never have\n");
    write(dir + "/l.txt", "0\n2\n");

    Corpus corpus = load_tweeteval(dir + "/t.txt", dir + "/l.txt");
    REQUIRE(corpus.size() == 2);
    CHECK(corpus.samples()[0].label == Emotion::anger);
    CHECK(corpus.samples()[1].label == Emotion::optimism);
    CHECK(corpus.samples()[1].text == "Worry is a down payment on a problem you may never have");
    CHECK(corpus.samples()[0].id == 0);
    CHECK(corpus.samples()[1].id == 1);
    CHECK(corpus.samples()[0].origin == Origin::real);
}

TEST_CASE("load_tweeteval tolerates CRLF and trailing newline-free files") {
    const std::string dir = temp_dir("corpus_crlf");
    write(dir + "/t.txt", "hello there\r\nanother line");
    write(dir + "/l.txt", "1\r\n3");
    Corpus corpus = load_tweeteval(dir + "/t.txt", dir + "/l.txt");
    REQUIRE(corpus.size() == 2);
    CHECK(corpus.samples()[0].text == "hello there");
    CHECK(corpus.samples()[1].label == Emotion::sadness);
}

TEST_CASE("load_tweeteval error paths") {
    const std::string dir = temp_dir("corpus_err");
    write(dir + "/t.txt", "a\nb\nc\n");
    write(dir + "/empty.txt", "");
    write(dir + "/two.txt", "0\n1\n");
    write(dir + "/bad.txt", "0\n7\n1\n");
    write(dir + "/blank_text.txt", "a\n   \nc\n");
    write(dir + "/three.txt", "0\n1\n2\n");

    CHECK_ERROR_KIND(ErrorKind::EmptyFile, load_tweeteval(dir + "/t.txt", dir + "/empty.txt"));
    CHECK_ERROR_KIND(ErrorKind::LineCountMismatch,
                     load_tweeteval(dir + "/t.txt", dir + "/two.txt"));
    CHECK_ERROR_KIND(ErrorKind::InvalidLabel, load_tweeteval(dir + "/t.txt", dir + "/bad.txt"));
    CHECK_ERROR_KIND(ErrorKind::EmptyText,
                     load_tweeteval(dir + "/blank_text.txt", dir + "/three.txt"));
    CHECK_ERROR_KIND(ErrorKind::Io, load_tweeteval(dir + "/missing.txt", dir + "/two.txt"));
}

TEST_CASE("preprocess applies the stripping rules") {
    PreprocessConfig config;
    CHECK(preprocess("@user I can't believe this!! #fail", config) ==
          std::vector<std::string>{"i", "can't", "believe", "this", "fail"});
    CHECK(preprocess("hello world", config) == std::vector<std::string>{"hello", "world"});
    CHECK(preprocess("@someone", config).empty());
    CHECK(preprocess("#Fail #WORSE", config) == std::vector<std::string>{"fail", "worse"});
    // unprotected contraction loses its apostrophe, protected one keeps it
    CHECK(preprocess("it's won't", config) == std::vector<std::string>{"its", "won't"});
    // emoji and stray symbols vanish
    CHECK(preprocess("fine \xF0\x9F\x98\xA2 ... ok", config) ==
          std::vector<std::string>{"fine", "ok"});
}

TEST_CASE("preprocess honors config switches") {
    PreprocessConfig config;
    config.strip_mentions = false;
    config.strip_non_alphanumeric = false;
    config.lowercase = false;
    auto tokens = preprocess("@User KEEP this!", config);
    CHECK(tokens == std::vector<std::string>{"@User", "KEEP", "this!"});
}

TEST_CASE("preprocess is idempotent on its own joined output") {
    PreprocessConfig config;
    Rng rng(7);
    for (int i = 0; i < 60; ++i) {
        Emotion e = fixture_label(rng);
        std::string text = fixture_tweet(e, rng);
        auto once = preprocess(text, config);
        std::string joined;
        for (const auto& t : once) joined += t + " ";
        CHECK(preprocess(joined, config) == once);
    }
}

TEST_CASE("make_splits produces disjoint stratified partitions") {
    Corpus corpus = fixture_corpus(5052, 11);
    SplitPlan plan = make_splits(corpus, 1000, 1000, 100, 10, 42);

    CHECK(plan.holdout_ids.size() == 1000);
    CHECK(plan.seed_ids.size() == 1000);
    CHECK(plan.pool_ids.size() >= 3052);
    CHECK(plan.holdout_ids.size() + plan.seed_ids.size() + plan.pool_ids.size() == corpus.size());

    std::set<std::int64_t> seen;
    for (const auto* ids : {&plan.holdout_ids, &plan.seed_ids, &plan.pool_ids}) {
        for (auto id : *ids) CHECK(seen.insert(id).second);
    }

    SUBCASE("deterministic for a fixed seed") {
        SplitPlan again = make_splits(corpus, 1000, 1000, 100, 10, 42);
        CHECK(again.holdout_ids == plan.holdout_ids);
        CHECK(again.seed_ids == plan.seed_ids);
        CHECK(again.pool_ids == plan.pool_ids);
    }
    SUBCASE("different seed moves the split") {
        SplitPlan other = make_splits(corpus, 1000, 1000, 100, 10, 43);
        CHECK(other.seed_ids != plan.seed_ids);
    }
}

TEST_CASE("make_splits stratification stays close to corpus proportions") {
    Corpus corpus = fixture_corpus(5052, 3);
    auto dist = class_distribution(corpus);
    for (int seed_n : {100, 500, 1000}) {
        SplitPlan plan = make_splits(corpus, 1000, seed_n, 10, 5, 9);
        std::map<Emotion, double> seed_dist;
        for (auto id : plan.seed_ids) seed_dist[corpus.by_id(id).label] += 1.0;
        for (auto& [e, count] : seed_dist) count /= seed_n;
        for (Emotion e : all_emotions()) {
            CHECK(std::abs(seed_dist[e] - dist[e]) < 2.0 / seed_n);
        }
    }
}

TEST_CASE("make_splits rejects impossible requests") {
    Corpus corpus = fixture_corpus(200, 5);
    CHECK_ERROR_KIND(ErrorKind::InsufficientData, make_splits(corpus, 200, 10, 0, 0, 1));
    CHECK_ERROR_KIND(ErrorKind::InsufficientData, make_splits(corpus, 50, 50, 100, 2, 1));
}

TEST_CASE("resplit_seed_pool keeps the holdout fixed") {
    Corpus corpus = fixture_corpus(1000, 21);
    SplitPlan base = make_splits(corpus, 200, 100, 10, 5, 7);
    SplitPlan fold = resplit_seed_pool(corpus, base, 99);

    CHECK(fold.holdout_ids == base.holdout_ids);
    CHECK(fold.seed_ids.size() == base.seed_ids.size());
    CHECK(fold.seed_ids != base.seed_ids);
    std::set<std::int64_t> holdout(fold.holdout_ids.begin(), fold.holdout_ids.end());
    for (auto id : fold.seed_ids) CHECK(!holdout.count(id));
    for (auto id : fold.pool_ids) CHECK(!holdout.count(id));
}

TEST_CASE("class_distribution") {
    SUBCASE("fractions sum to one") {
        Corpus corpus = fixture_corpus(777, 13);
        auto dist = class_distribution(corpus);
        double sum = 0.0;
        for (auto& [e, f] : dist) sum += f;
        CHECK(std::abs(sum - 1.0) < 1e-12);
        // fixture mirrors the real data's imbalance
        CHECK(dist[Emotion::anger] > 0.3);
        CHECK(dist[Emotion::optimism] < 0.15);
    }
    SUBCASE("single class") {
        Corpus corpus;
        corpus.add({0, "furious", Emotion::anger, Origin::real});
        auto dist = class_distribution(corpus);
        CHECK(dist[Emotion::anger] == 1.0);
    }
    SUBCASE("two balanced classes") {
        Corpus corpus;
        corpus.add({0, "furious", Emotion::anger, Origin::real});
        corpus.add({1, "delighted", Emotion::joy, Origin::real});
        auto dist = class_distribution(corpus);
        CHECK(dist[Emotion::anger] == 0.5);
        CHECK(dist[Emotion::joy] == 0.5);
    }
    SUBCASE("empty corpus") {
        CHECK_ERROR_KIND(ErrorKind::EmptyCorpus, class_distribution(Corpus{}));
    }
}

TEST_CASE("emotion label mapping is the fixed bijection") {
    CHECK(emotion_from_code(0) == Emotion::anger);
    CHECK(emotion_from_code(1) == Emotion::joy);
    CHECK(emotion_from_code(2) == Emotion::optimism);
    CHECK(emotion_from_code(3) == Emotion::sadness);
    for (Emotion e : all_emotions()) {
        CHECK(emotion_from_name(emotion_name(e)) == e);
    }
    CHECK_ERROR_KIND(ErrorKind::InvalidLabel, emotion_from_code(4));
    CHECK_ERROR_KIND(ErrorKind::InvalidLabel, emotion_from_name("boredom"));
}

TEST_CASE("split plan json round trip") {
    Corpus corpus = fixture_corpus(300, 2);
    SplitPlan plan = make_splits(corpus, 50, 40, 10, 3, 77);
    SplitPlan back = SplitPlan::from_json_string(plan.to_json_string());
    CHECK(back.holdout_ids == plan.holdout_ids);
    CHECK(back.seed_ids == plan.seed_ids);
    CHECK(back.pool_ids == plan.pool_ids);
    CHECK(back.rng_seed == plan.rng_seed);
    CHECK(back.increment_size == plan.increment_size);
}
