#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emoforge/corpus.hpp"
#include "emoforge/gbdt.hpp"
#include "emoforge/genclient.hpp"
#include "emoforge/keywords.hpp"
#include "emoforge/tfidf.hpp"

namespace emoforge {

enum class Strategy { RealExpansion, ShapGuided, Naive, ShapGuidedNoExemplars };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct KeywordParams {
    int k_pos = 5;
    int k_neg = 5;
    double importance_percentile = 50.0;
};

struct ExperimentConfig {
    std::vector<int> seed_sizes = {100, 500, 1000};
    int holdout_n = 1000;
    int increment = 100;
    int n_increments = 10;
    int folds = 10;
    std::uint64_t rng_seed = 0;
    int jobs = 1;
    PreprocessConfig preprocess;
    TfidfConfig tfidf;
    TrainConfig train;
    GenerationConfig generation;
    KeywordParams keywords;
    std::string config_echo_json;  // effective config, copied into the manifest
};

struct F1Result {
    std::vector<double> per_class;
    double macro = 0.0;
};

// 0/0 precision-recall cases score 0; macro averages all classes equally
F1Result f1_scores(const std::vector<int>& pred, const std::vector<int>& gold,
                   int n_classes = kNumEmotions);

struct RunRow {
    Strategy strategy = Strategy::RealExpansion;
    int seed_size = 0;
    int increment_index = 0;
    int fold = 0;
    int n_train = 0;
    double macro_f1 = 0.0;
    std::array<double, kNumEmotions> per_class_f1{};
};

struct FoldRecord {
    int fold = 0;
    std::string seed_hash;
    std::string holdout_hash;
    std::vector<int> n_train_per_increment;
};

struct StrategyRun {
    Strategy strategy = Strategy::RealExpansion;
    int seed_size = 0;
    std::vector<RunRow> rows;
    std::vector<FoldRecord> folds;
    std::vector<KeywordSet> keyword_sets;        // guided strategies only
    std::string synthetic_pool_hash;             // synthetic strategies only
    std::vector<LabeledSample> synthetic_pool;   // flattened, deterministic order
    std::string backend_id;
};

// One strategy over one base split: derives keywords from the base seed,
// generates (or replays) the synthetic pool, then runs folds x increments.
StrategyRun run_strategy(const Corpus& corpus, const SplitPlan& base_plan, Strategy strategy,
                         const ExperimentConfig& config, Backend& backend, SyntheticCache* cache);

struct SyntheticPoolDump {
    Strategy strategy = Strategy::ShapGuided;
    int seed_size = 0;
    std::string pool_hash;
    std::string backend_id;
    std::vector<LabeledSample> samples;

    // JSON-lines, one {emotion, text, prompt_hash, backend_id} per sample
    std::string to_jsonl() const;
};

struct RunResult {
    std::vector<RunRow> rows;
    std::string manifest_json;
    std::vector<SyntheticPoolDump> synthetic_pools;

    std::string results_csv() const;
    std::string summary_csv() const;
};

RunResult run_experiment(const Corpus& corpus, const ExperimentConfig& config, Backend& backend,
                         SyntheticCache* cache);

// Appendix-style exemplar ablation: guided generation with and without
// exemplars against the real-expansion baseline.
RunResult run_ablation(const Corpus& corpus, const ExperimentConfig& config, Backend& backend,
                       SyntheticCache* cache);

// results.csv + summary.csv + manifest.json + SVG charts under out_dir
std::vector<std::string> emit_reports(const RunResult& result, const std::string& out_dir);

std::string hash_ids(const std::vector<std::int64_t>& ids);
std::string corpus_hash(const Corpus& corpus);

}  // namespace emoforge
