#include "cli_config.hpp"

#include <nlohmann/json.hpp>

#include "emoforge/errors.hpp"
#include "emoforge/hash.hpp"
#include "emoforge/util.hpp"

namespace emoforge::cli {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        require(known, ErrorKind::Config, "unknown key '" + key + "' in " + where);
    }
}

template <typename T>
void read(const json& obj, const char* key, T& into) {
    if (obj.contains(key)) into = obj.at(key).get<T>();
}

}  // namespace

CliConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        fail(ErrorKind::Config, std::string("cannot parse ") + path + ": " + e.what());
    }
    check_keys(j, "config root",
               {"data", "paths", "preprocess", "tfidf", "train", "generation", "keywords",
                "experiment", "backend"});

    CliConfig cfg;
    if (j.contains("data")) {
        const auto& d = j["data"];
        check_keys(d, "data", {"text_path", "labels_path"});
        read(d, "text_path", cfg.text_path);
        read(d, "labels_path", cfg.labels_path);
    }
    if (j.contains("paths")) {
        const auto& p = j["paths"];
        check_keys(p, "paths", {"cache_dir", "out_dir"});
        read(p, "cache_dir", cfg.cache_dir);
        read(p, "out_dir", cfg.out_dir);
    }
    if (j.contains("preprocess")) {
        const auto& p = j["preprocess"];
        check_keys(p, "preprocess",
                   {"strip_mentions", "strip_hashtag_symbol", "strip_non_alphanumeric",
                    "lowercase", "preserve_extra"});
        auto& pp = cfg.experiment.preprocess;
        read(p, "strip_mentions", pp.strip_mentions);
        read(p, "strip_hashtag_symbol", pp.strip_hashtag_symbol);
        read(p, "strip_non_alphanumeric", pp.strip_non_alphanumeric);
        read(p, "lowercase", pp.lowercase);
        if (p.contains("preserve_extra")) {
            for (const auto& term : p["preserve_extra"]) {
                pp.preserve_list.insert(term.get<std::string>());
            }
        }
    }
    if (j.contains("tfidf")) {
        const auto& t = j["tfidf"];
        check_keys(t, "tfidf", {"min_df", "sublinear_tf", "l2_normalize"});
        read(t, "min_df", cfg.experiment.tfidf.min_df);
        read(t, "sublinear_tf", cfg.experiment.tfidf.sublinear_tf);
        read(t, "l2_normalize", cfg.experiment.tfidf.l2_normalize);
    }
    if (j.contains("train")) {
        const auto& t = j["train"];
        check_keys(t, "train",
                   {"n_rounds", "max_depth", "learning_rate", "min_child_weight", "lambda",
                    "gamma"});
        auto& tc = cfg.experiment.train;
        read(t, "n_rounds", tc.n_rounds);
        read(t, "max_depth", tc.max_depth);
        read(t, "learning_rate", tc.learning_rate);
        read(t, "min_child_weight", tc.min_child_weight);
        read(t, "lambda", tc.lambda);
        read(t, "gamma", tc.gamma);
        require(tc.n_rounds >= 1 && tc.max_depth >= 1, ErrorKind::Config,
                "train.n_rounds and train.max_depth must be >= 1");
        require(tc.learning_rate > 0.0 && tc.learning_rate <= 1.0, ErrorKind::Config,
                "train.learning_rate must be in (0, 1]");
    }
    if (j.contains("generation")) {
        const auto& g = j["generation"];
        check_keys(g, "generation",
                   {"temperature", "max_tokens", "batch_size", "inter_call_delay_ms", "model_id",
                    "max_retries", "exemplars_per_prompt"});
        auto& gc = cfg.experiment.generation;
        read(g, "temperature", gc.temperature);
        read(g, "max_tokens", gc.max_tokens);
        read(g, "batch_size", gc.batch_size);
        read(g, "inter_call_delay_ms", gc.inter_call_delay_ms);
        read(g, "model_id", gc.model_id);
        read(g, "max_retries", gc.max_retries);
        read(g, "exemplars_per_prompt", gc.exemplars_per_prompt);
        require(gc.temperature >= 0.0 && gc.temperature <= 2.0, ErrorKind::Config,
                "generation.temperature must be in [0, 2]");
        require(gc.inter_call_delay_ms >= 0, ErrorKind::Config,
                "generation.inter_call_delay_ms must be >= 0");
        require(gc.batch_size >= 1, ErrorKind::Config, "generation.batch_size must be >= 1");
    }
    if (j.contains("keywords")) {
        const auto& k = j["keywords"];
        check_keys(k, "keywords", {"k_pos", "k_neg", "importance_percentile"});
        auto& kp = cfg.experiment.keywords;
        read(k, "k_pos", kp.k_pos);
        read(k, "k_neg", kp.k_neg);
        read(k, "importance_percentile", kp.importance_percentile);
        require(kp.k_pos >= 0 && kp.k_pos <= 50 && kp.k_neg >= 0 && kp.k_neg <= 50,
                ErrorKind::Config, "keywords.k_pos/k_neg must be in [0, 50]");
    }
    if (j.contains("experiment")) {
        const auto& e = j["experiment"];
        check_keys(e, "experiment",
                   {"seed_sizes", "holdout_n", "increment", "n_increments", "folds", "rng_seed",
                    "jobs"});
        auto& ex = cfg.experiment;
        read(e, "seed_sizes", ex.seed_sizes);
        read(e, "holdout_n", ex.holdout_n);
        read(e, "increment", ex.increment);
        read(e, "n_increments", ex.n_increments);
        read(e, "folds", ex.folds);
        read(e, "rng_seed", ex.rng_seed);
        read(e, "jobs", ex.jobs);
        require(ex.folds >= 1, ErrorKind::Config, "experiment.folds must be >= 1");
        require(ex.n_increments >= 0 && ex.increment >= 0, ErrorKind::Config,
                "experiment.increment/n_increments must be >= 0");
        require(!ex.seed_sizes.empty(), ErrorKind::Config, "experiment.seed_sizes is empty");
    }
    if (j.contains("backend")) {
        const auto& b = j["backend"];
        check_keys(b, "backend", {"kind", "mock_seed", "endpoint", "api_key_env"});
        read(b, "kind", cfg.backend.kind);
        read(b, "mock_seed", cfg.backend.mock_seed);
        read(b, "endpoint", cfg.backend.endpoint);
        read(b, "api_key_env", cfg.backend.api_key_env);
        require(cfg.backend.kind == "mock" || cfg.backend.kind == "http", ErrorKind::Config,
                "backend.kind must be 'mock' or 'http'");
    }
    cfg.experiment.config_echo_json = cfg.effective_json();
    return cfg;
}

std::string CliConfig::effective_json() const {
    json j;
    j["data"] = {{"text_path", text_path}, {"labels_path", labels_path}};
    j["paths"] = {{"cache_dir", cache_dir}, {"out_dir", out_dir}};
    const auto& pp = experiment.preprocess;
    j["preprocess"] = {{"strip_mentions", pp.strip_mentions},
                       {"strip_hashtag_symbol", pp.strip_hashtag_symbol},
                       {"strip_non_alphanumeric", pp.strip_non_alphanumeric},
                       {"lowercase", pp.lowercase},
                       {"preserve_list", pp.preserve_list}};
    j["tfidf"] = {{"min_df", experiment.tfidf.min_df},
                  {"sublinear_tf", experiment.tfidf.sublinear_tf},
                  {"l2_normalize", experiment.tfidf.l2_normalize}};
    const auto& tc = experiment.train;
    j["train"] = {{"n_rounds", tc.n_rounds},
                  {"max_depth", tc.max_depth},
                  {"learning_rate", tc.learning_rate},
                  {"min_child_weight", tc.min_child_weight},
                  {"lambda", tc.lambda},
                  {"gamma", tc.gamma}};
    const auto& gc = experiment.generation;
    j["generation"] = {{"temperature", gc.temperature},
                       {"max_tokens", gc.max_tokens},
                       {"batch_size", gc.batch_size},
                       {"inter_call_delay_ms", gc.inter_call_delay_ms},
                       {"model_id", gc.model_id},
                       {"max_retries", gc.max_retries},
                       {"exemplars_per_prompt", gc.exemplars_per_prompt}};
    j["keywords"] = {{"k_pos", experiment.keywords.k_pos},
                     {"k_neg", experiment.keywords.k_neg},
                     {"importance_percentile", experiment.keywords.importance_percentile}};
    j["experiment"] = {{"seed_sizes", experiment.seed_sizes},
                       {"holdout_n", experiment.holdout_n},
                       {"increment", experiment.increment},
                       {"n_increments", experiment.n_increments},
                       {"folds", experiment.folds},
                       {"rng_seed", experiment.rng_seed},
                       {"jobs", experiment.jobs}};
    j["backend"] = {{"kind", backend.kind},
                    {"mock_seed", backend.mock_seed},
                    {"endpoint", backend.endpoint},
                    {"api_key_env", backend.api_key_env}};
    return j.dump(2);
}

std::string CliConfig::config_hash() const { return fnv1a64_hex(effective_json()); }

std::string CliConfig::run_dir() const { return out_dir + "/" + config_hash(); }

void apply_overrides(CliConfig& config, const Overrides& overrides) {
    if (overrides.seed) config.experiment.rng_seed = *overrides.seed;
    if (overrides.jobs) config.experiment.jobs = *overrides.jobs;
    if (overrides.backend_kind) {
        require(*overrides.backend_kind == "mock" || *overrides.backend_kind == "http",
                ErrorKind::Config, "--backend must be 'mock' or 'http'");
        config.backend.kind = *overrides.backend_kind;
    }
    if (overrides.text_path) config.text_path = *overrides.text_path;
    if (overrides.labels_path) config.labels_path = *overrides.labels_path;
    config.experiment.config_echo_json = config.effective_json();
}

std::unique_ptr<Backend> make_backend(const CliConfig& config) {
    if (config.backend.kind == "mock") {
        return std::make_unique<MockBackend>(config.backend.mock_seed);
    }
    return std::make_unique<HttpBackend>(config.backend.endpoint,
                                         config.experiment.generation.model_id,
                                         config.backend.api_key_env);
}

}  // namespace emoforge::cli
