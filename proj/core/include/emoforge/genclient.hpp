#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "emoforge/corpus.hpp"
#include "emoforge/keywords.hpp"
#include "emoforge/rng.hpp"

namespace emoforge {

struct PromptSpec {
    Emotion emotion = Emotion::anger;
    int batch_size = 20;
    std::vector<std::string> exemplars;          // real tweets, same emotion
    std::vector<std::string> include_keywords;   // may be empty
    std::vector<std::string> exclude_keywords;   // may be empty
};

// Renders the generation prompt. The EXAMPLES block and each KEYWORDS
// section appear only when their inputs are nonempty.
std::string build_prompt(const PromptSpec& spec);

std::string system_prompt(Emotion emotion);

// Pulls "N. text" lines out of a completion, ascending numbers, trimmed.
std::vector<std::string> parse_numbered_tweets(const std::string& raw, int expected_n);

struct GenerationConfig {
    double temperature = 0.8;
    int max_tokens = 1500;
    int batch_size = 20;
    int inter_call_delay_ms = 2000;
    std::string model_id = "claude-3-5-sonnet-20241022";
    int max_retries = 2;
    int exemplars_per_prompt = 10;
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string complete(const std::string& system, const std::string& user,
                                 const GenerationConfig& config) = 0;
    virtual std::string id() const = 0;
};

// Offline stand-in: stitches tweets from exemplar word spans, always works a
// positive keyword in when the prompt asks for them and never emits avoided
// ones. Keyed on (seed, exemplars, emotion, count, repeat index) so guided
// and unguided prompts over the same exemplars share their base wording
// while repeated identical prompts still vary. Stateful; callers serialize
// requests, matching the delay contract.
class MockBackend : public Backend {
public:
    explicit MockBackend(std::uint64_t seed) : seed_(seed) {}
    std::string complete(const std::string& system, const std::string& user,
                         const GenerationConfig& config) override;
    std::string id() const override;

private:
    std::uint64_t seed_;
    std::map<std::uint64_t, int> seen_prompts_;
};

// Chat-completions style HTTP client. Reads the API key from the named
// environment variable at call time.
class HttpBackend : public Backend {
public:
    HttpBackend(std::string endpoint_url, std::string model_id, std::string auth_env_var);
    std::string complete(const std::string& system, const std::string& user,
                         const GenerationConfig& config) override;
    std::string id() const override;

private:
    std::string endpoint_url_;
    std::string model_id_;
    std::string auth_env_var_;
};

// JSON-lines cache of parsed completions keyed by prompt hash, so reruns
// replay instead of calling out.
class SyntheticCache {
public:
    SyntheticCache() = default;                 // memory only
    explicit SyntheticCache(std::string path);  // loads existing entries

    std::optional<std::vector<std::string>> lookup(const std::string& prompt_hash,
                                                   const std::string& backend_id) const;
    void store(Emotion emotion, const std::string& prompt_hash, const std::string& backend_id,
               const std::vector<std::string>& texts);

    std::size_t entry_count() const;

private:
    std::string path_;
    std::map<std::string, std::vector<std::string>> by_key_;
};

struct SyntheticBatch {
    std::vector<LabeledSample> samples;
    std::string prompt_hash;  // combined over every request issued
    std::string backend_id;
    std::string timestamp;
};

struct GenerationRequest {
    Emotion emotion = Emotion::anger;
    int n_total = 0;
    std::vector<std::string> exemplar_pool;   // rotated across prompts
    std::optional<KeywordSet> keywords;       // guided when present
    Origin origin = Origin::synthetic_shap;
    std::int64_t first_id = kSyntheticIdBase;
};

// Issues ceil(n_total / batch_size) requests with the configured delay
// between calls, retries failed calls with the same prompt, dedups across
// batches, and re-requests any shortfall once.
SyntheticBatch generate_synthetic(Backend& backend, const GenerationRequest& request,
                                  const GenerationConfig& config, SyntheticCache* cache,
                                  Rng& rng);

}  // namespace emoforge
