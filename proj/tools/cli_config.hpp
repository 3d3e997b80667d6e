#pragma once

#include <optional>
#include <string>

#include "emoforge/harness.hpp"

namespace emoforge::cli {

struct BackendConfig {
    std::string kind = "mock";  // mock | http
    std::uint64_t mock_seed = 0;
    std::string endpoint = "https://api.anthropic.com/v1/messages";
    std::string api_key_env = "EMOFORGE_API_KEY";
};

struct CliConfig {
    std::string text_path;
    std::string labels_path;
    std::string cache_dir = "cache";
    std::string out_dir = "out";
    ExperimentConfig experiment;  // includes preprocess/tfidf/train/generation/keywords
    BackendConfig backend;

    // canonical JSON of the effective configuration (defaults applied)
    std::string effective_json() const;
    std::string config_hash() const;
    std::string run_dir() const;
};

// Strict loader: unknown keys anywhere are a config error; absent keys fall
// back to defaults.
CliConfig load_config(const std::string& path);

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<std::string> backend_kind;
    std::optional<std::string> text_path;
    std::optional<std::string> labels_path;
};

void apply_overrides(CliConfig& config, const Overrides& overrides);

std::unique_ptr<Backend> make_backend(const CliConfig& config);

}  // namespace emoforge::cli
