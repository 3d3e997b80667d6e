#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "emoforge/genclient.hpp"
#include "emoforge/util.hpp"
#include "support/checks.hpp"
#include "support/fixture.hpp"

using namespace emoforge;
using namespace emoforge::testsupport;

namespace {

GenerationConfig fast_config(int batch_size = 20) {
    GenerationConfig c;
    c.batch_size = batch_size;
    c.inter_call_delay_ms = 0;
    c.max_retries = 2;
    return c;
}

PromptSpec full_spec() {
    PromptSpec spec;
    spec.emotion = Emotion::anger;
    spec.batch_size = 20;
    spec.exemplars = {"My roommate ate my leftovers again #done",
                      "Customer service hung up on me after 45 minutes"};
    spec.include_keywords = {"angry", "fuming", "outrage", "anger", "bully"};
    spec.exclude_keywords = {"happy", "love"};
    return spec;
}

std::string data_file(const char* name) {
    return std::string(EMOFORGE_TESTS_DATA_DIR) + "/" + name;
}

// test double driven by a response script
class ScriptedBackend : public Backend {
public:
    explicit ScriptedBackend(std::function<std::string(int, const std::string&)> script)
        : script_(std::move(script)) {}
    std::string complete(const std::string&, const std::string& user,
                         const GenerationConfig&) override {
        return script_(calls_++, user);
    }
    std::string id() const override { return "scripted"; }
    int calls() const { return calls_; }

private:
    std::function<std::string(int, const std::string&)> script_;
    int calls_ = 0;
};

std::string numbered(int n, const std::string& stem, int salt = 0) {
    std::ostringstream out;
    for (int i = 1; i <= n; ++i) {
        out << i << ". " << stem << " " << salt << "-" << i << "\n";
    }
    return out.str();
}

int count_from_prompt(const std::string& user) {
    const std::string marker = "1. Generate exactly ";
    auto at = user.find(marker);
    REQUIRE(at != std::string::npos);
    return std::stoi(user.substr(at + marker.size()));
}

}  // namespace

TEST_CASE("build_prompt interpolates the template") {
    PromptSpec spec = full_spec();
    std::string prompt = build_prompt(spec);
    CHECK(prompt.find("Generate exactly 20 anger tweets") != std::string::npos);
    CHECK(prompt.find("EXAMPLES OF REAL ANGER TWEETS:") != std::string::npos);
    CHECK(prompt.find("KEYWORDS TO INCLUDE (use these concepts naturally\nand randomly): angry, "
                      "fuming, outrage, anger, bully") != std::string::npos);
    CHECK(prompt.find("KEYWORDS TO AVOID (don't emphasize these): happy, love") !=
          std::string::npos);
    CHECK(prompt.find("Generate the anger tweets now:") != std::string::npos);
}

TEST_CASE("build_prompt golden renders") {
    SUBCASE("full spec") {
        CHECK(build_prompt(full_spec()) == read_file(data_file("prompt_golden_full.txt")));
    }
    SUBCASE("no keywords, single exemplar") {
        PromptSpec spec;
        spec.emotion = Emotion::joy;
        spec.batch_size = 5;
        spec.exemplars = {"Best birthday ever thanks everyone"};
        CHECK(build_prompt(spec) == read_file(data_file("prompt_golden_nokeywords.txt")));
    }
}

TEST_CASE("keyword sections appear exactly when their lists are nonempty") {
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        PromptSpec spec;
        spec.emotion = all_emotions()[rng.below(4)];
        spec.batch_size = 1 + static_cast<int>(rng.below(30));
        if (rng.below(2)) spec.exemplars = {"some exemplar"};
        if (rng.below(2)) spec.include_keywords = {"inc1", "inc2"};
        if (rng.below(2)) spec.exclude_keywords = {"exc"};
        std::string prompt = build_prompt(spec);
        CHECK((prompt.find("KEYWORDS TO INCLUDE") != std::string::npos) ==
              !spec.include_keywords.empty());
        CHECK((prompt.find("KEYWORDS TO AVOID") != std::string::npos) ==
              !spec.exclude_keywords.empty());
        CHECK((prompt.find("EXAMPLES OF REAL") != std::string::npos) == !spec.exemplars.empty());
        CHECK(prompt.find("\n\n\n") == std::string::npos);  // no leftover blank slots
    }
}

TEST_CASE("parse_numbered_tweets") {
    SUBCASE("plain numbered list") {
        CHECK(parse_numbered_tweets("1. foo\n2. bar", 2) ==
              std::vector<std::string>{"foo", "bar"});
    }
    SUBCASE("preamble chatter and paren numbering are tolerated") {
        CHECK(parse_numbered_tweets("Sure! Here you go:\n\n1) foo\n", 1) ==
              std::vector<std::string>{"foo"});
        CHECK(parse_numbered_tweets("intro\n 1.   spaced out  \n2. next", 2) ==
              std::vector<std::string>{"spaced out", "next"});
    }
    SUBCASE("count mismatch") {
        CHECK_ERROR_KIND(ErrorKind::CountMismatch, parse_numbered_tweets("1. foo", 2));
        CHECK_ERROR_KIND(ErrorKind::CountMismatch, parse_numbered_tweets("1. a\n2. b\n3. c", 2));
    }
    SUBCASE("unparseable") {
        CHECK_ERROR_KIND(ErrorKind::Unparseable, parse_numbered_tweets("no numbers here", 1));
        CHECK_ERROR_KIND(ErrorKind::Unparseable, parse_numbered_tweets("", 1));
    }
    SUBCASE("round-trips k numbered lines for k up to 100") {
        Rng rng(7);
        for (int k : {1, 2, 13, 57, 100}) {
            std::vector<std::string> texts;
            std::ostringstream render;
            for (int i = 1; i <= k; ++i) {
                std::string t = "tweet " + std::to_string(rng.next() % 100000) + " about " +
                                std::to_string(i);
                texts.push_back(t);
                render << i << ". " << t << "\n";
            }
            CHECK(parse_numbered_tweets(render.str(), k) == texts);
        }
    }
}

TEST_CASE("mock backend") {
    GenerationConfig cfg = fast_config();
    PromptSpec spec = full_spec();
    spec.batch_size = 15;
    const std::string user = build_prompt(spec);
    const std::string sys = system_prompt(spec.emotion);

    SUBCASE("fixed seed gives fixed output") {
        MockBackend a(123), b(123), c(321);
        CHECK(a.complete(sys, user, cfg) == b.complete(sys, user, cfg));
        CHECK(a.complete(sys, user, cfg) != c.complete(sys, user, cfg));
    }
    SUBCASE("repeating the same prompt varies the batch") {
        MockBackend m(5);
        CHECK(m.complete(sys, user, cfg) != m.complete(sys, user, cfg));
    }
    SUBCASE("keyword contract: every tweet has a positive keyword and no negative ones") {
        MockBackend m(9);
        auto texts = parse_numbered_tweets(m.complete(sys, user, cfg), 15);
        for (const auto& t : texts) {
            bool has_include = false;
            for (const auto& kw : spec.include_keywords) {
                if (t.find(kw) != std::string::npos) has_include = true;
            }
            CHECK(has_include);
            for (const auto& kw : spec.exclude_keywords) {
                CHECK(t.find(kw) == std::string::npos);
            }
        }
        std::set<std::string> distinct(texts.begin(), texts.end());
        CHECK(distinct.size() == texts.size());
    }
}

TEST_CASE("generate_synthetic") {
    std::vector<std::string> pool;
    Rng pool_rng(2);
    for (int i = 0; i < 25; ++i) pool.push_back(fixture_tweet(Emotion::anger, pool_rng));

    SUBCASE("40 tweets at batch 20 issue exactly two calls") {
        ScriptedBackend backend(
            [](int call, const std::string& user) {
                return numbered(count_from_prompt(user), "call text", call);
            });
        GenerationRequest request;
        request.emotion = Emotion::anger;
        request.n_total = 40;
        request.exemplar_pool = pool;
        Rng rng(1);
        SyntheticBatch batch = generate_synthetic(backend, request, fast_config(20), nullptr, rng);
        CHECK(backend.calls() == 2);
        CHECK(batch.samples.size() == 40);
        for (const auto& s : batch.samples) {
            CHECK(s.label == Emotion::anger);
            CHECK(s.origin == Origin::synthetic_shap);
            CHECK(!s.text.empty());
        }
        CHECK(batch.samples.front().id == kSyntheticIdBase);
    }
    SUBCASE("single tweet from the mock is deterministic") {
        GenerationRequest request;
        request.emotion = Emotion::joy;
        request.n_total = 1;
        request.exemplar_pool = pool;
        MockBackend a(7), b(7);
        Rng rng1(4), rng2(4);
        auto batch1 = generate_synthetic(a, request, fast_config(), nullptr, rng1);
        auto batch2 = generate_synthetic(b, request, fast_config(), nullptr, rng2);
        REQUIRE(batch1.samples.size() == 1);
        CHECK(batch1.samples[0].text == batch2.samples[0].text);
    }
    SUBCASE("a 19-of-20 completion triggers a retry with the same prompt") {
        std::string first_prompt, second_prompt;
        ScriptedBackend backend([&](int call, const std::string& user) {
            if (call == 0) {
                first_prompt = user;
                return numbered(19, "short", call);  // one line missing
            }
            second_prompt = user;
            return numbered(count_from_prompt(user), "full", call);
        });
        GenerationRequest request;
        request.emotion = Emotion::sadness;
        request.n_total = 20;
        request.exemplar_pool = pool;
        Rng rng(5);
        auto batch = generate_synthetic(backend, request, fast_config(20), nullptr, rng);
        CHECK(backend.calls() == 2);
        CHECK(batch.samples.size() == 20);
        CHECK(first_prompt == second_prompt);
    }
    SUBCASE("persistent failure surfaces as a backend error after retries") {
        ScriptedBackend backend([](int, const std::string&) { return std::string("garbage"); });
        GenerationRequest request;
        request.emotion = Emotion::anger;
        request.n_total = 5;
        request.exemplar_pool = pool;
        Rng rng(6);
        GenerationConfig cfg = fast_config(5);
        CHECK_ERROR_KIND(ErrorKind::Backend,
                         generate_synthetic(backend, request, cfg, nullptr, rng));
        CHECK(backend.calls() == cfg.max_retries + 1);
    }
    SUBCASE("cross-batch duplicates are re-requested once") {
        ScriptedBackend backend([](int call, const std::string& user) {
            const int n = count_from_prompt(user);
            if (call < 2) return numbered(n, "same every time");  // batches collide
            return numbered(n, "fresh", call);
        });
        GenerationRequest request;
        request.emotion = Emotion::joy;
        request.n_total = 20;
        request.exemplar_pool = pool;
        Rng rng(8);
        auto batch = generate_synthetic(backend, request, fast_config(10), nullptr, rng);
        CHECK(backend.calls() == 3);  // two planned + one shortfall
        CHECK(batch.samples.size() == 20);
        std::set<std::string> distinct;
        for (const auto& s : batch.samples) distinct.insert(s.text);
        CHECK(distinct.size() == 20);
    }
    SUBCASE("an endlessly repeating backend saturates") {
        ScriptedBackend backend([](int, const std::string& user) {
            return numbered(count_from_prompt(user), "identical");
        });
        GenerationRequest request;
        request.emotion = Emotion::joy;
        request.n_total = 20;
        request.exemplar_pool = pool;
        Rng rng(9);
        CHECK_ERROR_KIND(ErrorKind::DuplicateSaturation,
                         generate_synthetic(backend, request, fast_config(10), nullptr, rng));
    }
    SUBCASE("warm cache replays without backend calls") {
        const std::string path = temp_dir("gen_cache") + "/cache.jsonl";
        GenerationRequest request;
        request.emotion = Emotion::optimism;
        request.n_total = 12;
        request.exemplar_pool = pool;

        MockBackend mock(33);
        SyntheticCache cache(path);
        Rng rng1(10);
        auto first = generate_synthetic(mock, request, fast_config(6), &cache, rng1);
        CHECK(cache.entry_count() == 12);

        // a backend that fails if ever called proves the replay is pure cache
        class MockIdBackend : public Backend {
        public:
            std::string complete(const std::string&, const std::string&,
                                 const GenerationConfig&) override {
                throw Error(ErrorKind::Backend, "cache should have answered");
            }
            std::string id() const override { return MockBackend(33).id(); }
        } disguised;

        SyntheticCache warm(path);
        Rng rng2(10);
        auto second = generate_synthetic(disguised, request, fast_config(6), &warm, rng2);
        REQUIRE(second.samples.size() == first.samples.size());
        for (std::size_t i = 0; i < first.samples.size(); ++i) {
            CHECK(second.samples[i].text == first.samples[i].text);
        }
    }
}

TEST_CASE("http backend against a local chat-completions server") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/messages", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        auto body = nlohmann::json::parse(req.body);
        const int n = count_from_prompt(body.at("messages")[0].at("content"));
        nlohmann::json reply;
        reply["content"] = nlohmann::json::array({{{"type", "text"}, {"text", numbered(n, "srv")}}});
        res.set_content(reply.dump(), "application/json");
    });
    server.Post("/v1/chat", [&](const httplib::Request& req, httplib::Response& res) {
        auto body = nlohmann::json::parse(req.body);
        const int n = count_from_prompt(body.at("messages")[0].at("content"));
        nlohmann::json reply;
        reply["choices"] =
            nlohmann::json::array({{{"message", {{"role", "assistant"},
                                                 {"content", numbered(n, "openai")}}}}});
        res.set_content(reply.dump(), "application/json");
    });
    server.Post("/v1/broken", [](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
        res.set_content("upstream exploded", "text/plain");
    });

    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const std::string base = "http://127.0.0.1:" + std::to_string(port);
    setenv("EMOFORGE_TEST_KEY", "sk-test", 1);
    GenerationConfig cfg = fast_config(3);

    SUBCASE("anthropic-shaped response") {
        HttpBackend backend(base + "/v1/messages", "test-model", "EMOFORGE_TEST_KEY");
        PromptSpec spec;
        spec.emotion = Emotion::anger;
        spec.batch_size = 3;
        auto raw = backend.complete(system_prompt(spec.emotion), build_prompt(spec), cfg);
        CHECK(parse_numbered_tweets(raw, 3).size() == 3);
        CHECK(hits == 1);
        CHECK(backend.id() == "http:test-model");
    }
    SUBCASE("openai-shaped response") {
        HttpBackend backend(base + "/v1/chat", "other-model", "EMOFORGE_TEST_KEY");
        PromptSpec spec;
        spec.emotion = Emotion::joy;
        spec.batch_size = 2;
        auto raw = backend.complete(system_prompt(spec.emotion), build_prompt(spec), cfg);
        CHECK(parse_numbered_tweets(raw, 2) ==
              std::vector<std::string>{"openai 0-1", "openai 0-2"});
    }
    SUBCASE("http errors map to backend errors") {
        HttpBackend backend(base + "/v1/broken", "m", "EMOFORGE_TEST_KEY");
        CHECK_ERROR_KIND(ErrorKind::Backend, backend.complete("s", "u", cfg));
    }
    SUBCASE("missing api key names the env var") {
        unsetenv("EMOFORGE_MISSING_KEY");
        HttpBackend backend(base + "/v1/messages", "m", "EMOFORGE_MISSING_KEY");
        try {
            backend.complete("s", "u", cfg);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Backend);
            CHECK(std::string(e.what()).find("EMOFORGE_MISSING_KEY") != std::string::npos);
        }
    }

    server.stop();
    server_thread.join();
}

TEST_CASE("synthetic cache persists and reloads") {
    const std::string path = temp_dir("cache_rt") + "/c.jsonl";
    {
        SyntheticCache cache(path);
        cache.store(Emotion::anger, "hash1#0", "mock:1", {"a", "b"});
        cache.store(Emotion::joy, "hash2#0", "mock:1", {"c"});
    }
    SyntheticCache reloaded(path);
    CHECK(reloaded.entry_count() == 3);
    auto hit = reloaded.lookup("hash1#0", "mock:1");
    REQUIRE(hit.has_value());
    CHECK(*hit == std::vector<std::string>{"a", "b"});
    CHECK(!reloaded.lookup("hash1#0", "mock:2").has_value());
    CHECK(!reloaded.lookup("nope", "mock:1").has_value());
}
