#include "emoforge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "emoforge/errors.hpp"
#include "emoforge/hash.hpp"
#include "emoforge/rng.hpp"
#include "emoforge/shap.hpp"
#include "emoforge/svg.hpp"
#include "emoforge/util.hpp"

namespace emoforge {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::RealExpansion: return "real_expansion";
        case Strategy::ShapGuided: return "shap_guided";
        case Strategy::Naive: return "naive";
        case Strategy::ShapGuidedNoExemplars: return "shap_guided_no_exemplars";
    }
    return "unknown";
}

Strategy strategy_from_name(const std::string& name) {
    for (Strategy s : {Strategy::RealExpansion, Strategy::ShapGuided, Strategy::Naive,
                       Strategy::ShapGuidedNoExemplars}) {
        if (name == strategy_name(s)) return s;
    }
    fail(ErrorKind::Config, "unknown strategy: " + name);
}

F1Result f1_scores(const std::vector<int>& pred, const std::vector<int>& gold, int n_classes) {
    require(pred.size() == gold.size(), ErrorKind::LengthMismatch, "pred/gold size mismatch");
    require(!pred.empty(), ErrorKind::EmptyInput, "f1 over zero samples");

    std::vector<double> tp(n_classes, 0.0), fp(n_classes, 0.0), fn(n_classes, 0.0);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == gold[i]) {
            tp[gold[i]] += 1.0;
        } else {
            fp[pred[i]] += 1.0;
            fn[gold[i]] += 1.0;
        }
    }
    F1Result out;
    out.per_class.resize(n_classes);
    for (int c = 0; c < n_classes; ++c) {
        const double denom = 2.0 * tp[c] + fp[c] + fn[c];
        out.per_class[c] = denom > 0.0 ? 2.0 * tp[c] / denom : 0.0;
        out.macro += out.per_class[c];
    }
    out.macro /= static_cast<double>(n_classes);
    return out;
}

std::string hash_ids(const std::vector<std::int64_t>& ids) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t id : ids) {
        h = fnv1a64(std::to_string(id) + ",", h);
    }
    return hex64(h);
}

std::string corpus_hash(const Corpus& corpus) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& s : corpus.samples()) {
        h = fnv1a64(std::to_string(s.id), h);
        h = fnv1a64(s.text, h);
        h = fnv1a64(std::to_string(static_cast<int>(s.label)), h);
    }
    return hex64(h);
}

namespace {

bool is_guided(Strategy s) {
    return s == Strategy::ShapGuided || s == Strategy::ShapGuidedNoExemplars;
}

bool is_synthetic(Strategy s) { return s != Strategy::RealExpansion; }

Origin strategy_origin(Strategy s) {
    return s == Strategy::Naive ? Origin::synthetic_naive : Origin::synthetic_shap;
}

// Proportional interleaving: every prefix of the schedule stays within one
// sample of the seed's class mix.
std::vector<Emotion> emotion_schedule(const std::array<double, kNumEmotions>& fractions,
                                      int total) {
    std::array<int, kNumEmotions> counts{};
    std::vector<Emotion> schedule;
    schedule.reserve(total);
    for (int j = 1; j <= total; ++j) {
        int best = -1;
        double best_deficit = -1.0;
        for (int e = 0; e < kNumEmotions; ++e) {
            const double deficit = fractions[e] * j - counts[e];
            if (fractions[e] > 0.0 && deficit > best_deficit) {
                best_deficit = deficit;
                best = e;
            }
        }
        require(best >= 0, ErrorKind::EmptyCorpus, "seed has no classes to schedule");
        ++counts[best];
        schedule.push_back(static_cast<Emotion>(best));
    }
    return schedule;
}

std::array<double, kNumEmotions> seed_fractions(const Corpus& corpus, const SplitPlan& plan) {
    std::array<double, kNumEmotions> fractions{};
    for (std::int64_t id : plan.seed_ids) {
        fractions[static_cast<int>(corpus.by_id(id).label)] += 1.0;
    }
    for (auto& f : fractions) f /= static_cast<double>(plan.seed_ids.size());
    return fractions;
}

struct TokenStore {
    std::map<std::int64_t, std::vector<std::string>> tokens;
    std::map<std::int64_t, Emotion> labels;

    void add(const LabeledSample& sample, const PreprocessConfig& config) {
        tokens[sample.id] = preprocess(sample.text, config);
        labels[sample.id] = sample.label;
    }
    const std::vector<std::string>& tokens_of(std::int64_t id) const { return tokens.at(id); }
    Emotion label_of(std::int64_t id) const { return labels.at(id); }
};

struct SeedArtifacts {
    TfidfModel tfidf;
    std::vector<SparseVector> X;
    std::vector<Emotion> labels;
    Ensemble model;
    std::string model_hash;
    std::string split_hash;
};

SeedArtifacts derive_seed_artifacts(const SplitPlan& base_plan, const TokenStore& store,
                                    const ExperimentConfig& cfg) {
    SeedArtifacts art;
    std::vector<std::vector<std::string>> docs;
    std::vector<int> y;
    for (std::int64_t id : base_plan.seed_ids) {
        docs.push_back(store.tokens_of(id));
        art.labels.push_back(store.label_of(id));
        y.push_back(static_cast<int>(store.label_of(id)));
    }
    art.tfidf = TfidfModel::fit(docs, cfg.tfidf);
    for (const auto& doc : docs) art.X.push_back(art.tfidf.transform(doc));
    art.model = train(art.X, y, kNumEmotions, cfg.train);
    art.model_hash = fnv1a64_hex(art.model.to_json_string());
    art.split_hash = hash_ids(base_plan.seed_ids);
    return art;
}

std::vector<KeywordSet> derive_keyword_sets(const SeedArtifacts& art,
                                            const ExperimentConfig& cfg) {
    GlobalImportance importance = global_importance(art.model, art.X);
    ImportanceFilterPolicy policy{cfg.keywords.importance_percentile};
    std::vector<KeywordSet> sets;
    for (Emotion e : all_emotions()) {
        auto scores = differential_scores(art.X, art.labels, e, art.tfidf.vocab().terms);
        auto filtered = filter_by_importance(scores, importance, e, policy);
        KeywordSet set = split_keywords(filtered, e, cfg.keywords.k_pos, cfg.keywords.k_neg);
        set.model_hash = art.model_hash;
        set.split_hash = art.split_hash;
        sets.push_back(std::move(set));
    }
    return sets;
}

struct SyntheticPool {
    std::map<Emotion, std::vector<LabeledSample>> by_emotion;
    std::string hash;
};

SyntheticPool generate_pool(Strategy strategy, const Corpus& corpus, const SplitPlan& base_plan,
                            const std::vector<KeywordSet>& keyword_sets,
                            const std::vector<Emotion>& schedule, const ExperimentConfig& cfg,
                            Backend& backend, SyntheticCache* cache) {
    std::array<int, kNumEmotions> counts{};
    for (Emotion e : schedule) ++counts[static_cast<int>(e)];

    const Origin origin = strategy_origin(strategy);
    std::int64_t next_id = origin_id_base(origin) +
                           (strategy == Strategy::ShapGuidedNoExemplars ? kSyntheticIdBase / 2 : 0);

    SyntheticPool pool;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Emotion e : all_emotions()) {
        const int want = counts[static_cast<int>(e)];
        if (want == 0) continue;

        GenerationRequest request;
        request.emotion = e;
        request.n_total = want;
        request.origin = origin;
        request.first_id = next_id;
        next_id += want;
        if (strategy != Strategy::ShapGuidedNoExemplars) {
            for (std::int64_t id : base_plan.seed_ids) {
                const auto& s = corpus.by_id(id);
                if (s.label == e) request.exemplar_pool.push_back(s.text);
            }
        }
        if (is_guided(strategy)) {
            for (const auto& set : keyword_sets) {
                if (set.emotion == e) request.keywords = set;
            }
        }
        // exemplar rotation keyed off (master seed, seed size, emotion) only,
        // so guided and unguided pools see identical exemplar sequences
        Rng rng(hash_combine(derive_seed(cfg.rng_seed, "generation", base_plan.seed_size),
                             static_cast<std::uint64_t>(e)));
        SyntheticBatch batch = generate_synthetic(backend, request, cfg.generation, cache, rng);
        for (const auto& s : batch.samples) h = fnv1a64(s.text, h);
        pool.by_emotion[e] = std::move(batch.samples);
    }
    pool.hash = hex64(h);
    return pool;
}

struct FoldOutput {
    std::vector<RunRow> rows;
    FoldRecord record;
};

FoldOutput run_fold(int fold, Strategy strategy, const Corpus& corpus, const SplitPlan& base_plan,
                    const SyntheticPool& pool, const std::vector<Emotion>& schedule,
                    const TokenStore& store, const ExperimentConfig& cfg) {
    const std::uint64_t fold_seed =
        hash_combine(derive_seed(cfg.rng_seed, "fold-plan", base_plan.seed_size),
                     static_cast<std::uint64_t>(fold));
    SplitPlan plan = resplit_seed_pool(corpus, base_plan, fold_seed);

    const int total_added = base_plan.increment_size * base_plan.n_increments;
    std::set<std::int64_t> holdout(plan.holdout_ids.begin(), plan.holdout_ids.end());

    // the fold's augmentation sequence: ids into the corpus for real
    // expansion, pool samples for the synthetic strategies
    std::vector<std::int64_t> added_ids;
    std::vector<const LabeledSample*> added_synth;
    if (strategy == Strategy::RealExpansion) {
        require(static_cast<int>(plan.pool_ids.size()) >= total_added, ErrorKind::PoolExhausted,
                "pool of " + std::to_string(plan.pool_ids.size()) + " cannot cover " +
                    std::to_string(total_added) + " real additions");
        std::vector<std::int64_t> order = plan.pool_ids;
        Rng rng(hash_combine(derive_seed(cfg.rng_seed, "real-order", base_plan.seed_size),
                             static_cast<std::uint64_t>(fold)));
        rng.shuffle(order);
        added_ids.assign(order.begin(), order.begin() + total_added);
    } else {
        Rng rng(hash_combine(
            derive_seed(cfg.rng_seed, std::string("subsample-") + strategy_name(strategy),
                        base_plan.seed_size),
            static_cast<std::uint64_t>(fold)));
        std::map<Emotion, std::vector<const LabeledSample*>> queues;
        for (const auto& [e, samples] : pool.by_emotion) {
            auto& q = queues[e];
            for (const auto& s : samples) q.push_back(&s);
            rng.shuffle(q);
        }
        for (Emotion e : schedule) {
            auto& q = queues[e];
            require(!q.empty(), ErrorKind::PoolExhausted,
                    std::string("synthetic pool exhausted for ") + emotion_name(e));
            added_synth.push_back(q.back());
            q.pop_back();
        }
    }

    // no-leakage invariant: nothing in any training set may come from the
    // holdout
    for (std::int64_t id : plan.seed_ids) {
        require(!holdout.count(id), ErrorKind::Config, "seed leaks into holdout");
    }
    for (std::int64_t id : added_ids) {
        require(!holdout.count(id), ErrorKind::Config, "augmentation leaks into holdout");
    }

    std::vector<std::vector<std::string>> holdout_docs;
    std::vector<int> holdout_gold;
    for (std::int64_t id : plan.holdout_ids) {
        holdout_docs.push_back(store.tokens_of(id));
        holdout_gold.push_back(static_cast<int>(store.label_of(id)));
    }

    FoldOutput out;
    out.record.fold = fold;
    out.record.seed_hash = hash_ids(plan.seed_ids);
    out.record.holdout_hash = hash_ids(plan.holdout_ids);

    std::vector<std::vector<std::string>> docs;
    std::vector<int> y;
    for (std::int64_t id : plan.seed_ids) {
        docs.push_back(store.tokens_of(id));
        y.push_back(static_cast<int>(store.label_of(id)));
    }

    for (int k = 0; k <= base_plan.n_increments; ++k) {
        if (k > 0) {
            const int from = (k - 1) * base_plan.increment_size;
            const int to = k * base_plan.increment_size;
            for (int j = from; j < to; ++j) {
                if (strategy == Strategy::RealExpansion) {
                    docs.push_back(store.tokens_of(added_ids[j]));
                    y.push_back(static_cast<int>(store.label_of(added_ids[j])));
                } else {
                    docs.push_back(store.tokens_of(added_synth[j]->id));
                    y.push_back(static_cast<int>(added_synth[j]->label));
                }
            }
        }
        // vocabulary is re-fit every time data is added
        TfidfModel tfidf = TfidfModel::fit(docs, cfg.tfidf);
        std::vector<SparseVector> X;
        X.reserve(docs.size());
        for (const auto& doc : docs) X.push_back(tfidf.transform(doc));
        Ensemble model = train(X, y, kNumEmotions, cfg.train);

        std::vector<int> pred;
        pred.reserve(holdout_docs.size());
        for (const auto& doc : holdout_docs) {
            pred.push_back(predict_label(model, tfidf.transform(doc)));
        }
        F1Result f1 = f1_scores(pred, holdout_gold);

        RunRow row;
        row.strategy = strategy;
        row.seed_size = base_plan.seed_size;
        row.increment_index = k;
        row.fold = fold;
        row.n_train = static_cast<int>(docs.size());
        row.macro_f1 = f1.macro;
        for (int c = 0; c < kNumEmotions; ++c) row.per_class_f1[c] = f1.per_class[c];
        out.rows.push_back(row);
        out.record.n_train_per_increment.push_back(row.n_train);
    }
    return out;
}

}  // namespace

StrategyRun run_strategy(const Corpus& corpus, const SplitPlan& base_plan, Strategy strategy,
                         const ExperimentConfig& config, Backend& backend, SyntheticCache* cache) {
    StrategyRun run;
    run.strategy = strategy;
    run.seed_size = base_plan.seed_size;

    TokenStore store;
    for (const auto& s : corpus.samples()) store.add(s, config.preprocess);

    std::vector<Emotion> schedule;
    SyntheticPool pool;
    if (is_synthetic(strategy)) {
        schedule = emotion_schedule(seed_fractions(corpus, base_plan),
                                    base_plan.increment_size * base_plan.n_increments);
        std::vector<KeywordSet> keyword_sets;
        if (is_guided(strategy)) {
            SeedArtifacts art = derive_seed_artifacts(base_plan, store, config);
            keyword_sets = derive_keyword_sets(art, config);
        }
        pool = generate_pool(strategy, corpus, base_plan, keyword_sets, schedule, config, backend,
                             cache);
        run.keyword_sets = std::move(keyword_sets);
        run.synthetic_pool_hash = pool.hash;
        for (const auto& [e, samples] : pool.by_emotion) {
            for (const auto& s : samples) {
                store.add(s, config.preprocess);
                run.synthetic_pool.push_back(s);
            }
        }
    }
    run.backend_id = backend.id();

    const int folds = std::max(config.folds, 1);
    std::vector<FoldOutput> outputs(folds);
    const int jobs = std::clamp(config.jobs, 1, folds);
    if (jobs == 1) {
        for (int fold = 0; fold < folds; ++fold) {
            outputs[fold] =
                run_fold(fold, strategy, corpus, base_plan, pool, schedule, store, config);
        }
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (int fold = next.fetch_add(1); fold < folds; fold = next.fetch_add(1)) {
                try {
                    outputs[fold] = run_fold(fold, strategy, corpus, base_plan, pool, schedule,
                                             store, config);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (auto& out : outputs) {
        run.rows.insert(run.rows.end(), out.rows.begin(), out.rows.end());
        run.folds.push_back(std::move(out.record));
    }
    return run;
}

namespace {

RunResult run_strategies(const Corpus& corpus, const ExperimentConfig& config, Backend& backend,
                         SyntheticCache* cache, const std::vector<Strategy>& strategies) {
    RunResult result;
    nlohmann::json manifest;
    manifest["created"] = iso_utc_now();
    manifest["backend_id"] = backend.id();
    manifest["corpus"] = {{"n", corpus.size()}, {"hash", corpus_hash(corpus)}};
    manifest["master_seed"] = config.rng_seed;
    if (!config.config_echo_json.empty()) {
        manifest["config"] = nlohmann::json::parse(config.config_echo_json, nullptr, false);
        if (manifest["config"].is_discarded()) manifest["config"] = config.config_echo_json;
    }
    nlohmann::json strategies_json = nlohmann::json::array();
    for (Strategy s : strategies) strategies_json.push_back(strategy_name(s));
    manifest["strategies"] = std::move(strategies_json);
    manifest["seed_sizes"] = config.seed_sizes;

    nlohmann::json plans = nlohmann::json::object();
    nlohmann::json strategy_folds = nlohmann::json::object();
    nlohmann::json keywords = nlohmann::json::object();
    nlohmann::json pools = nlohmann::json::object();

    for (int seed_size : config.seed_sizes) {
        SplitPlan base_plan =
            make_splits(corpus, config.holdout_n, seed_size, config.increment, config.n_increments,
                        derive_seed(config.rng_seed, "base-plan", seed_size));
        plans[std::to_string(seed_size)] = {
            {"holdout_hash", hash_ids(base_plan.holdout_ids)},
            {"seed_hash", hash_ids(base_plan.seed_ids)},
            {"pool_size", base_plan.pool_ids.size()},
        };

        for (Strategy strategy : strategies) {
            StrategyRun run = run_strategy(corpus, base_plan, strategy, config, backend, cache);
            result.rows.insert(result.rows.end(), run.rows.begin(), run.rows.end());
            if (!run.synthetic_pool.empty()) {
                SyntheticPoolDump dump;
                dump.strategy = strategy;
                dump.seed_size = seed_size;
                dump.pool_hash = run.synthetic_pool_hash;
                dump.backend_id = run.backend_id;
                dump.samples = std::move(run.synthetic_pool);
                result.synthetic_pools.push_back(std::move(dump));
            }

            nlohmann::json folds = nlohmann::json::array();
            for (const auto& f : run.folds) {
                folds.push_back({{"fold", f.fold},
                                 {"seed_hash", f.seed_hash},
                                 {"holdout_hash", f.holdout_hash},
                                 {"n_train", f.n_train_per_increment}});
            }
            strategy_folds[strategy_name(strategy)][std::to_string(seed_size)] = std::move(folds);
            if (!run.keyword_sets.empty()) {
                nlohmann::json sets = nlohmann::json::array();
                for (const auto& set : run.keyword_sets) {
                    sets.push_back(nlohmann::json::parse(set.to_json_string()));
                }
                keywords[strategy_name(strategy)][std::to_string(seed_size)] = std::move(sets);
            }
            if (!run.synthetic_pool_hash.empty()) {
                pools[strategy_name(strategy)][std::to_string(seed_size)] =
                    run.synthetic_pool_hash;
            }
        }
    }

    manifest["plans"] = std::move(plans);
    manifest["strategy_folds"] = std::move(strategy_folds);
    manifest["keywords"] = std::move(keywords);
    manifest["synthetic_pools"] = std::move(pools);
    manifest["row_count"] = result.rows.size();
    manifest["invariants"] = {{"no_leakage_checked", true}, {"paired_strategies", true}};

    std::sort(result.rows.begin(), result.rows.end(), [](const RunRow& a, const RunRow& b) {
        if (a.strategy != b.strategy) return static_cast<int>(a.strategy) < static_cast<int>(b.strategy);
        if (a.seed_size != b.seed_size) return a.seed_size < b.seed_size;
        if (a.increment_index != b.increment_index) return a.increment_index < b.increment_index;
        return a.fold < b.fold;
    });
    result.manifest_json = manifest.dump(2);
    return result;
}

}  // namespace

RunResult run_experiment(const Corpus& corpus, const ExperimentConfig& config, Backend& backend,
                         SyntheticCache* cache) {
    return run_strategies(corpus, config, backend, cache,
                          {Strategy::RealExpansion, Strategy::ShapGuided, Strategy::Naive});
}

RunResult run_ablation(const Corpus& corpus, const ExperimentConfig& config, Backend& backend,
                       SyntheticCache* cache) {
    return run_strategies(
        corpus, config, backend, cache,
        {Strategy::RealExpansion, Strategy::ShapGuided, Strategy::ShapGuidedNoExemplars});
}

std::string SyntheticPoolDump::to_jsonl() const {
    std::string out;
    for (const auto& s : samples) {
        nlohmann::json j;
        j["emotion"] = emotion_name(s.label);
        j["text"] = s.text;
        j["prompt_hash"] = pool_hash;
        j["backend_id"] = backend_id;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string RunResult::results_csv() const {
    std::string csv =
        "strategy,seed_size,increment,fold,n_train,macro_f1,f1_anger,f1_joy,f1_optimism,"
        "f1_sadness\n";
    for (const auto& row : rows) {
        csv += strategy_name(row.strategy);
        csv += ',' + std::to_string(row.seed_size);
        csv += ',' + std::to_string(row.increment_index);
        csv += ',' + std::to_string(row.fold);
        csv += ',' + std::to_string(row.n_train);
        csv += ',' + format_double(row.macro_f1);
        for (double f1 : row.per_class_f1) csv += ',' + format_double(f1);
        csv += '\n';
    }
    return csv;
}

std::string RunResult::summary_csv() const {
    struct Key {
        Strategy strategy;
        int seed_size;
        int increment;
        bool operator<(const Key& o) const {
            if (strategy != o.strategy) return static_cast<int>(strategy) < static_cast<int>(o.strategy);
            if (seed_size != o.seed_size) return seed_size < o.seed_size;
            return increment < o.increment;
        }
    };
    std::map<Key, std::vector<double>> groups;
    for (const auto& row : rows) {
        groups[{row.strategy, row.seed_size, row.increment_index}].push_back(row.macro_f1);
    }
    std::string csv = "strategy,seed_size,increment,n_folds,mean_macro_f1,sd_macro_f1\n";
    for (const auto& [key, values] : groups) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        const double sd = values.size() > 1 ? std::sqrt(var / (values.size() - 1)) : 0.0;
        csv += strategy_name(key.strategy);
        csv += ',' + std::to_string(key.seed_size);
        csv += ',' + std::to_string(key.increment);
        csv += ',' + std::to_string(values.size());
        csv += ',' + format_double(mean);
        csv += ',' + format_double(sd);
        csv += '\n';
    }
    return csv;
}

std::vector<std::string> emit_reports(const RunResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    fs::create_directories(out_dir + "/charts");

    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        const std::string path = out_dir + "/" + name;
        write_file(path, content);
        written.push_back(path);
    };
    emit("results.csv", result.results_csv());
    emit("summary.csv", result.summary_csv());
    emit("manifest.json", result.manifest_json);
    for (const auto& pool : result.synthetic_pools) {
        emit("synthetic_" + std::string(strategy_name(pool.strategy)) + "_seed" +
                 std::to_string(pool.seed_size) + ".jsonl",
             pool.to_jsonl());
    }

    // one mean-macro-F1 line chart per seed size, one series per strategy
    std::set<int> seed_sizes;
    for (const auto& row : result.rows) seed_sizes.insert(row.seed_size);
    for (int seed_size : seed_sizes) {
        std::map<Strategy, std::map<int, std::pair<double, int>>> agg;
        for (const auto& row : result.rows) {
            if (row.seed_size != seed_size) continue;
            auto& [sum, count] = agg[row.strategy][row.increment_index];
            sum += row.macro_f1;
            count += 1;
        }
        std::vector<SvgSeries> series;
        for (const auto& [strategy, by_increment] : agg) {
            SvgSeries s;
            s.name = strategy_name(strategy);
            for (const auto& [inc, pair] : by_increment) {
                s.points.emplace_back(inc, pair.first / pair.second);
            }
            series.push_back(std::move(s));
        }
        emit("charts/f1_seed" + std::to_string(seed_size) + ".svg",
             svg_line_chart("mean macro F1, seed " + std::to_string(seed_size), "increment",
                            "macro F1", series));
    }
    return written;
}

}  // namespace emoforge
