#include "emoforge/genclient.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "emoforge/errors.hpp"
#include "emoforge/hash.hpp"
#include "emoforge/util.hpp"

namespace emoforge {

namespace {

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string build_prompt(const PromptSpec& spec) {
    const std::string emotion = emotion_name(spec.emotion);
    const std::string n = std::to_string(spec.batch_size);

    std::vector<std::string> blocks;
    blocks.push_back("I need to generate " + n + " realistic " + emotion +
                     " tweets\nfor a machine learning emotion detection dataset.");
    if (!spec.exemplars.empty()) {
        blocks.push_back("EXAMPLES OF REAL " + upper(emotion) + " TWEETS:\n" +
                         join(spec.exemplars, "\n"));
    }
    if (!spec.include_keywords.empty()) {
        blocks.push_back("KEYWORDS TO INCLUDE (use these concepts naturally\nand randomly): " +
                         join(spec.include_keywords, ", "));
    }
    if (!spec.exclude_keywords.empty()) {
        blocks.push_back("KEYWORDS TO AVOID (don't emphasize these): " +
                         join(spec.exclude_keywords, ", "));
    }
    blocks.push_back(
        "REQUIREMENTS:\n"
        "1. Generate exactly " + n + " " + emotion + " tweets\n"
        "2. Make them realistic social media posts with natural language\n"
        "3. Use hashtags, mentions (@user), and casual expressions when\n"
        "   appropriate\n"
        "4. Each tweet should clearly express " + emotion + "\n"
        "5. Number each tweet (1., 2., 3., etc.)\n"
        "6. Do not create files. Just give the tweet.\n"
        "7. Do not repeat the themes of the tweet. Be imaginative and put\n"
        "   yourself in the circumstances of humans.\n"
        "8. You are not allowed to give the same tweets that you have\n"
        "   already provided.\n"
        "9. Sample keywords randomly and make some tweets informal, with\n"
        "   typos, slang");
    blocks.push_back("Generate the " + emotion + " tweets now:");
    return join(blocks, "\n\n");
}

std::string system_prompt(Emotion emotion) {
    return std::string("You are an expert at generating realistic social media content "
                       "expressing ") +
           emotion_name(emotion) +
           ". Produce diverse, authentic-sounding tweets that use hashtags, mentions (@user), "
           "casual expressions, and informal language patterns characteristic of social media "
           "discourse.";
}

std::vector<std::string> parse_numbered_tweets(const std::string& raw, int expected_n) {
    require(!raw.empty(), ErrorKind::Unparseable, "empty completion");

    std::vector<std::string> texts;
    long last_number = 0;
    bool any_match = false;
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t digits_begin = i;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
        if (i == digits_begin || i >= line.size()) continue;
        if (line[i] != '.' && line[i] != ')') continue;
        const long number = std::stol(line.substr(digits_begin, i - digits_begin));
        if (number <= last_number) continue;  // restarted numbering is chatter
        std::string text = trim(line.substr(i + 1));
        if (text.empty()) continue;
        any_match = true;
        last_number = number;
        texts.push_back(std::move(text));
    }
    require(any_match, ErrorKind::Unparseable, "no numbered lines in completion");
    require(static_cast<int>(texts.size()) == expected_n, ErrorKind::CountMismatch,
            "found " + std::to_string(texts.size()) + ", expected " + std::to_string(expected_n));
    return texts;
}

// --- mock backend -----------------------------------------------------------

namespace {

struct ParsedPrompt {
    int count = 0;
    std::string emotion;
    std::vector<std::string> exemplars;
    std::vector<std::string> include;
    std::vector<std::string> exclude;
    std::string exemplar_block;
};

std::vector<std::string> split_csv_terms(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string term = trim(s.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start));
        if (!term.empty()) out.push_back(term);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

ParsedPrompt parse_prompt(const std::string& prompt) {
    ParsedPrompt parsed;
    std::istringstream in(prompt);
    std::string line;
    bool in_examples = false;
    bool expect_include_terms = false;
    while (std::getline(in, line)) {
        if (expect_include_terms) {
            const std::string marker = "and randomly): ";
            std::size_t at = line.find(marker);
            if (at != std::string::npos) {
                parsed.include = split_csv_terms(line.substr(at + marker.size()));
            }
            expect_include_terms = false;
            continue;
        }
        if (line.rfind("EXAMPLES OF REAL ", 0) == 0) {
            in_examples = true;
            continue;
        }
        if (in_examples) {
            if (line.empty()) {
                in_examples = false;
            } else {
                parsed.exemplars.push_back(line);
                parsed.exemplar_block += line;
                parsed.exemplar_block += '\n';
            }
            continue;
        }
        if (line.rfind("KEYWORDS TO INCLUDE", 0) == 0) {
            expect_include_terms = true;
            continue;
        }
        const std::string avoid_marker = "KEYWORDS TO AVOID (don't emphasize these): ";
        if (line.rfind(avoid_marker, 0) == 0) {
            parsed.exclude = split_csv_terms(line.substr(avoid_marker.size()));
            continue;
        }
        const std::string gen_marker = "1. Generate exactly ";
        if (line.rfind(gen_marker, 0) == 0) {
            std::istringstream rest(line.substr(gen_marker.size()));
            rest >> parsed.count >> parsed.emotion;
        }
    }
    return parsed;
}

std::vector<std::string> whitespace_words(const std::string& s) {
    std::vector<std::string> words;
    std::istringstream in(s);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

}  // namespace

std::string MockBackend::complete(const std::string& /*system*/, const std::string& user,
                                  const GenerationConfig& /*config*/) {
    ParsedPrompt parsed = parse_prompt(user);
    require(parsed.count > 0, ErrorKind::Backend, "mock could not read the requested count");

    std::set<std::string> avoid;
    for (const auto& t : parsed.exclude) avoid.insert(lower(t));

    // Seeded on the parts shared between guided and unguided prompts, so the
    // two variants produce identical base wording over the same exemplars.
    // The repeat index keeps back-to-back identical prompts from colliding.
    // Keyword insertion draws from a separate stream so that adding (or
    // dropping) the KEYWORDS sections cannot shift the base wording.
    const int repeat = seen_prompts_[fnv1a64(user)]++;
    const std::uint64_t call_seed =
        hash_combine(hash_combine(seed_, fnv1a64(parsed.exemplar_block + parsed.emotion + "#" +
                                                 std::to_string(parsed.count))),
                     static_cast<std::uint64_t>(repeat));
    Rng base_rng(call_seed);
    Rng kw_rng(hash_combine(call_seed, 0x6b65797773ULL));

    std::ostringstream out;
    out << "Here are " << parsed.count << " " << parsed.emotion << " tweets:\n\n";
    std::set<std::string> seen;
    for (int i = 1; i <= parsed.count; ++i) {
        std::vector<std::string> words;
        for (int span = 0; span < 2 && !parsed.exemplars.empty(); ++span) {
            const auto& ex = parsed.exemplars[base_rng.below(parsed.exemplars.size())];
            auto ex_words = whitespace_words(ex);
            if (ex_words.empty()) continue;
            const std::size_t span_len = 2 + base_rng.below(3);
            const std::size_t start =
                ex_words.size() <= span_len ? 0 : base_rng.below(ex_words.size() - span_len);
            for (std::size_t k = start; k < std::min(start + span_len, ex_words.size()); ++k) {
                if (!avoid.count(lower(ex_words[k]))) words.push_back(ex_words[k]);
            }
        }
        std::string tag;
        do {
            tag = "#w" + hex64(base_rng.next()).substr(10);
        } while (avoid.count(lower(tag.substr(1))));
        words.push_back(tag);
        if (!parsed.include.empty()) {
            // at least one positive keyword per tweet, sometimes two
            words.push_back(parsed.include[kw_rng.below(parsed.include.size())]);
            if (kw_rng.below(2) == 0) {
                words.push_back(parsed.include[kw_rng.below(parsed.include.size())]);
            }
        }
        std::string text = join(words, " ");
        if (text.empty() || seen.count(text)) {
            text += " #w" + hex64(base_rng.next()).substr(10);
        }
        seen.insert(text);
        out << i << ". " << text << "\n";
    }
    return out.str();
}

std::string MockBackend::id() const { return "mock:" + std::to_string(seed_); }

// --- http backend -----------------------------------------------------------

HttpBackend::HttpBackend(std::string endpoint_url, std::string model_id, std::string auth_env_var)
    : endpoint_url_(std::move(endpoint_url)),
      model_id_(std::move(model_id)),
      auth_env_var_(std::move(auth_env_var)) {}

std::string HttpBackend::id() const { return "http:" + model_id_; }

std::string HttpBackend::complete(const std::string& system, const std::string& user,
                                  const GenerationConfig& config) {
    const char* key = std::getenv(auth_env_var_.c_str());
    require(key != nullptr && *key != '\0', ErrorKind::Backend,
            "API key environment variable " + auth_env_var_ + " is not set");

    std::size_t scheme_end = endpoint_url_.find("://");
    require(scheme_end != std::string::npos, ErrorKind::Backend,
            "endpoint url lacks a scheme: " + endpoint_url_);
    std::size_t path_begin = endpoint_url_.find('/', scheme_end + 3);
    const std::string base =
        path_begin == std::string::npos ? endpoint_url_ : endpoint_url_.substr(0, path_begin);
    const std::string path =
        path_begin == std::string::npos ? "/" : endpoint_url_.substr(path_begin);

    nlohmann::json body;
    body["model"] = model_id_;
    body["temperature"] = config.temperature;
    body["max_tokens"] = config.max_tokens;
    body["system"] = system;
    body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", user}}});

    httplib::Client client(base);
    client.set_read_timeout(120, 0);
    httplib::Headers headers = {
        {"x-api-key", key},
        {"Authorization", std::string("Bearer ") + key},
    };
    auto res = client.Post(path, headers, body.dump(), "application/json");
    require(res != nullptr, ErrorKind::Backend, "no response from " + endpoint_url_);
    require(res->status >= 200 && res->status < 300, ErrorKind::Backend,
            "HTTP " + std::to_string(res->status) + " from " + endpoint_url_ + ": " + res->body);

    try {
        nlohmann::json j = nlohmann::json::parse(res->body);
        if (j.contains("content") && j["content"].is_array() && !j["content"].empty()) {
            return j["content"][0].at("text").get<std::string>();
        }
        if (j.contains("choices") && !j["choices"].empty()) {
            return j["choices"][0].at("message").at("content").get<std::string>();
        }
        if (j.contains("completion")) return j["completion"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Backend, std::string("malformed completion payload: ") + e.what());
    }
    fail(ErrorKind::Backend, "completion payload in an unknown shape");
}

// --- cache ------------------------------------------------------------------

namespace {
std::string cache_key(const std::string& prompt_hash, const std::string& backend_id) {
    return backend_id + "/" + prompt_hash;
}
}  // namespace

SyntheticCache::SyntheticCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in.is_open()) return;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        by_key_[cache_key(j.at("prompt_hash"), j.at("backend_id"))].push_back(j.at("text"));
    }
}

std::optional<std::vector<std::string>> SyntheticCache::lookup(const std::string& prompt_hash,
                                                               const std::string& backend_id) const {
    auto it = by_key_.find(cache_key(prompt_hash, backend_id));
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

void SyntheticCache::store(Emotion emotion, const std::string& prompt_hash,
                           const std::string& backend_id, const std::vector<std::string>& texts) {
    by_key_[cache_key(prompt_hash, backend_id)] = texts;
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    require(out.is_open(), ErrorKind::Io, "cannot append to cache " + path_);
    for (const auto& text : texts) {
        nlohmann::json j;
        j["emotion"] = emotion_name(emotion);
        j["text"] = text;
        j["prompt_hash"] = prompt_hash;
        j["backend_id"] = backend_id;
        out << j.dump() << "\n";
    }
}

std::size_t SyntheticCache::entry_count() const {
    std::size_t n = 0;
    for (const auto& [k, v] : by_key_) n += v.size();
    return n;
}

// --- generation loop --------------------------------------------------------

namespace {

std::string normalized(const std::string& text) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

class ExemplarRotation {
public:
    ExemplarRotation(const std::vector<std::string>& pool, Rng& rng) : pool_(pool), rng_(rng) {
        order_.resize(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) order_[i] = i;
        rng_.shuffle(order_);
    }

    std::vector<std::string> draw(std::size_t count) {
        std::vector<std::string> out;
        if (pool_.empty()) return out;
        count = std::min(count, pool_.size());
        while (out.size() < count) {
            if (cursor_ == order_.size()) {
                rng_.shuffle(order_);
                cursor_ = 0;
            }
            out.push_back(pool_[order_[cursor_++]]);
        }
        return out;
    }

private:
    const std::vector<std::string>& pool_;
    Rng& rng_;
    std::vector<std::size_t> order_;
    std::size_t cursor_ = 0;
};

struct CallOutcome {
    std::vector<std::string> texts;
    std::string key;
};

CallOutcome run_one_call(Backend& backend, const PromptSpec& spec, const GenerationConfig& config,
                         SyntheticCache* cache, bool* made_backend_call, int repeat_index) {
    const std::string user = build_prompt(spec);
    const std::string sys = system_prompt(spec.emotion);
    CallOutcome outcome;
    outcome.key = fnv1a64_hex(sys + "\x1f" + user) + "#" + std::to_string(repeat_index);

    if (cache != nullptr) {
        if (auto hit = cache->lookup(outcome.key, backend.id());
            hit && static_cast<int>(hit->size()) == spec.batch_size) {
            outcome.texts = *hit;
            return outcome;
        }
    }

    std::string last_error;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        if (*made_backend_call && config.inter_call_delay_ms > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(config.inter_call_delay_ms));
        }
        *made_backend_call = true;
        try {
            std::string raw = backend.complete(sys, user, config);
            outcome.texts = parse_numbered_tweets(raw, spec.batch_size);
            if (cache != nullptr) {
                cache->store(spec.emotion, outcome.key, backend.id(), outcome.texts);
            }
            return outcome;
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    fail(ErrorKind::Backend, "call failed after " + std::to_string(config.max_retries) +
                                 " retries: " + last_error);
}

}  // namespace

SyntheticBatch generate_synthetic(Backend& backend, const GenerationRequest& request,
                                  const GenerationConfig& config, SyntheticCache* cache,
                                  Rng& rng) {
    require(request.n_total >= 1, ErrorKind::EmptyInput, "asked to generate zero tweets");
    require(config.batch_size >= 1, ErrorKind::Config, "batch_size must be positive");

    ExemplarRotation rotation(request.exemplar_pool, rng);
    bool made_backend_call = false;
    std::uint64_t combined_hash = 0;
    std::map<std::string, int> prompt_repeats;

    std::vector<std::string> unique_texts;
    std::set<std::string> seen;
    auto absorb = [&](const std::vector<std::string>& texts) {
        for (const auto& t : texts) {
            if (seen.insert(normalized(t)).second &&
                static_cast<int>(unique_texts.size()) < request.n_total) {
                unique_texts.push_back(t);
            }
        }
    };

    auto issue = [&](int count) {
        PromptSpec spec;
        spec.emotion = request.emotion;
        spec.batch_size = count;
        spec.exemplars = rotation.draw(static_cast<std::size_t>(config.exemplars_per_prompt));
        if (request.keywords) {
            spec.include_keywords = request.keywords->positive;
            spec.exclude_keywords = request.keywords->negative;
        }
        const std::string user = build_prompt(spec);
        const int repeat_index = prompt_repeats[fnv1a64_hex(user)]++;
        CallOutcome outcome =
            run_one_call(backend, spec, config, cache, &made_backend_call, repeat_index);
        combined_hash = hash_combine(combined_hash, fnv1a64(outcome.key));
        absorb(outcome.texts);
    };

    int remaining = request.n_total;
    while (remaining > 0) {
        const int count = std::min(remaining, config.batch_size);
        issue(count);
        remaining -= count;
    }
    if (static_cast<int>(unique_texts.size()) < request.n_total) {
        // one shot at recovering duplicates lost to dedup
        issue(request.n_total - static_cast<int>(unique_texts.size()));
    }
    require(static_cast<int>(unique_texts.size()) >= request.n_total,
            ErrorKind::DuplicateSaturation,
            "backend keeps repeating itself; got " + std::to_string(unique_texts.size()) +
                " unique of " + std::to_string(request.n_total));

    SyntheticBatch batch;
    batch.backend_id = backend.id();
    batch.prompt_hash = hex64(combined_hash);
    batch.timestamp = iso_utc_now();
    for (int i = 0; i < request.n_total; ++i) {
        LabeledSample sample;
        sample.id = request.first_id + i;
        sample.text = unique_texts[i];
        sample.label = request.emotion;
        sample.origin = request.origin;
        batch.samples.push_back(std::move(sample));
    }
    return batch;
}

}  // namespace emoforge
