#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli_config.hpp"
#include "emoforge/corpus.hpp"
#include "emoforge/errors.hpp"
#include "emoforge/harness.hpp"
#include "emoforge/linguistics.hpp"
#include "emoforge/rng.hpp"
#include "emoforge/shap.hpp"
#include "emoforge/svg.hpp"
#include "emoforge/util.hpp"

namespace fs = std::filesystem;
using namespace emoforge;
using cli::CliConfig;

namespace {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config: return 2;
        case ErrorKind::Backend: return 4;
        default: return 3;
    }
}

std::string sanitized(std::string name) {
    for (auto& c : name) {
        if (c == ':' || c == '/' || c == '\\') c = '_';
    }
    return name;
}

Corpus load_corpus(const CliConfig& cfg) {
    require(!cfg.text_path.empty() && !cfg.labels_path.empty(), ErrorKind::Config,
            "data.text_path and data.labels_path must be set (or passed via --text/--labels)");
    return load_tweeteval(cfg.text_path, cfg.labels_path);
}

SplitPlan base_plan_for(const Corpus& corpus, const CliConfig& cfg, int seed_size) {
    return make_splits(corpus, cfg.experiment.holdout_n, seed_size, cfg.experiment.increment,
                       cfg.experiment.n_increments,
                       derive_seed(cfg.experiment.rng_seed, "base-plan", seed_size));
}

std::string cache_path_for(const CliConfig& cfg, const Backend& backend) {
    fs::create_directories(cfg.cache_dir);
    return cfg.cache_dir + "/" + sanitized(backend.id()) + ".jsonl";
}

struct SeedModel {
    TfidfModel tfidf;
    std::vector<SparseVector> X;
    std::vector<Emotion> labels;
    Ensemble model;
};

SeedModel fit_seed_model(const Corpus& corpus, const SplitPlan& plan, const CliConfig& cfg) {
    SeedModel sm;
    std::vector<std::vector<std::string>> docs;
    std::vector<int> y;
    for (std::int64_t id : plan.seed_ids) {
        const auto& s = corpus.by_id(id);
        docs.push_back(preprocess(s.text, cfg.experiment.preprocess));
        sm.labels.push_back(s.label);
        y.push_back(static_cast<int>(s.label));
    }
    sm.tfidf = TfidfModel::fit(docs, cfg.experiment.tfidf);
    for (const auto& doc : docs) sm.X.push_back(sm.tfidf.transform(doc));
    sm.model = train(sm.X, y, kNumEmotions, cfg.experiment.train);
    return sm;
}

std::vector<KeywordSet> keyword_sets_for(const Corpus& corpus, const SplitPlan& plan,
                                         const SeedModel& sm, const CliConfig& cfg) {
    GlobalImportance importance = global_importance(sm.model, sm.X);
    ImportanceFilterPolicy policy{cfg.experiment.keywords.importance_percentile};
    const std::string model_hash = fnv1a64_hex(sm.model.to_json_string());
    const std::string split_hash = hash_ids(plan.seed_ids);
    std::vector<KeywordSet> sets;
    for (Emotion e : all_emotions()) {
        auto scores = differential_scores(sm.X, sm.labels, e, sm.tfidf.vocab().terms);
        auto filtered = filter_by_importance(scores, importance, e, policy);
        KeywordSet set = split_keywords(filtered, e, cfg.experiment.keywords.k_pos,
                                        cfg.experiment.keywords.k_neg);
        set.model_hash = model_hash;
        set.split_hash = split_hash;
        sets.push_back(std::move(set));
    }
    (void)corpus;
    return sets;
}

int cmd_ingest(const CliConfig& cfg) {
    Corpus corpus = load_corpus(cfg);
    auto dist = class_distribution(corpus);
    std::map<Emotion, int> counts;
    for (const auto& s : corpus.samples()) ++counts[s.label];
    std::cout << "loaded " << corpus.size() << " samples from " << cfg.text_path << "\n";
    for (Emotion e : all_emotions()) {
        std::cout << "  " << emotion_name(e) << ": " << counts[e] << " ("
                  << format_double(100.0 * dist[e], 2) << "%)\n";
    }
    return 0;
}

int cmd_split(const CliConfig& cfg, int seed_size) {
    Corpus corpus = load_corpus(cfg);
    SplitPlan plan = base_plan_for(corpus, cfg, seed_size);
    fs::create_directories(cfg.run_dir());
    const std::string path = cfg.run_dir() + "/splits_seed" + std::to_string(seed_size) + ".json";
    write_file(path, plan.to_json_string());
    std::cout << "holdout " << plan.holdout_ids.size() << ", seed " << plan.seed_ids.size()
              << ", pool " << plan.pool_ids.size() << "\n"
              << "wrote " << path << "\n";
    return 0;
}

int cmd_train(const CliConfig& cfg, int seed_size) {
    Corpus corpus = load_corpus(cfg);
    SplitPlan plan = base_plan_for(corpus, cfg, seed_size);
    SeedModel sm = fit_seed_model(corpus, plan, cfg);

    std::vector<int> pred, gold;
    for (std::int64_t id : plan.holdout_ids) {
        const auto& s = corpus.by_id(id);
        pred.push_back(
            predict_label(sm.model, sm.tfidf.transform(preprocess(s.text, cfg.experiment.preprocess))));
        gold.push_back(static_cast<int>(s.label));
    }
    F1Result f1 = f1_scores(pred, gold);

    fs::create_directories(cfg.run_dir());
    const std::string tag = "_seed" + std::to_string(seed_size);
    write_file(cfg.run_dir() + "/model" + tag + ".json", sm.model.to_json_string());
    write_file(cfg.run_dir() + "/tfidf" + tag + ".json", sm.tfidf.to_json_string());
    nlohmann::json metrics;
    metrics["macro_f1"] = f1.macro;
    for (Emotion e : all_emotions()) {
        metrics[std::string("f1_") + emotion_name(e)] = f1.per_class[static_cast<int>(e)];
    }
    write_file(cfg.run_dir() + "/metrics" + tag + ".json", metrics.dump(2));

    std::cout << "seed-only baseline (seed " << seed_size << "): macro F1 "
              << format_double(f1.macro, 4) << "\n";
    for (Emotion e : all_emotions()) {
        std::cout << "  f1_" << emotion_name(e) << ": "
                  << format_double(f1.per_class[static_cast<int>(e)], 4) << "\n";
    }
    std::cout << "wrote model/tfidf/metrics under " << cfg.run_dir() << "\n";
    return 0;
}

int cmd_keywords(const CliConfig& cfg, int seed_size) {
    Corpus corpus = load_corpus(cfg);
    SplitPlan plan = base_plan_for(corpus, cfg, seed_size);
    SeedModel sm = fit_seed_model(corpus, plan, cfg);
    auto sets = keyword_sets_for(corpus, plan, sm, cfg);

    fs::create_directories(cfg.run_dir());
    for (const auto& set : sets) {
        const std::string path = cfg.run_dir() + "/keywords_seed" + std::to_string(seed_size) +
                                 "_" + emotion_name(set.emotion) + ".json";
        write_file(path, set.to_json_string());
        std::cout << emotion_name(set.emotion) << "\n  positive:";
        for (const auto& t : set.positive) std::cout << " " << t;
        std::cout << "\n  negative:";
        for (const auto& t : set.negative) std::cout << " " << t;
        std::cout << "\n";
    }
    std::cout << "wrote keyword files under " << cfg.run_dir() << "\n";
    return 0;
}

int cmd_generate(const CliConfig& cfg, int seed_size, const std::string& strategy_arg,
                 const std::string& emotion_arg, int count) {
    require(strategy_arg == "shap" || strategy_arg == "naive", ErrorKind::Config,
            "--strategy must be 'shap' or 'naive'");
    Corpus corpus = load_corpus(cfg);
    SplitPlan plan = base_plan_for(corpus, cfg, seed_size);

    std::vector<KeywordSet> sets;
    if (strategy_arg == "shap") {
        SeedModel sm = fit_seed_model(corpus, plan, cfg);
        sets = keyword_sets_for(corpus, plan, sm, cfg);
    }
    auto backend = cli::make_backend(cfg);
    SyntheticCache cache(cache_path_for(cfg, *backend));

    std::vector<Emotion> targets;
    if (emotion_arg == "all") {
        targets = all_emotions();
    } else {
        targets = {emotion_from_name(emotion_arg)};
    }

    fs::create_directories(cfg.run_dir());
    const Origin origin =
        strategy_arg == "shap" ? Origin::synthetic_shap : Origin::synthetic_naive;
    for (Emotion e : targets) {
        GenerationRequest request;
        request.emotion = e;
        request.n_total = count;
        request.origin = origin;
        request.first_id = origin_id_base(origin);
        for (std::int64_t id : plan.seed_ids) {
            const auto& s = corpus.by_id(id);
            if (s.label == e) request.exemplar_pool.push_back(s.text);
        }
        for (const auto& set : sets) {
            if (set.emotion == e) request.keywords = set;
        }
        Rng rng(hash_combine(derive_seed(cfg.experiment.rng_seed, "generation", seed_size),
                             static_cast<std::uint64_t>(e)));
        SyntheticBatch batch =
            generate_synthetic(*backend, request, cfg.experiment.generation, &cache, rng);

        std::string jsonl;
        for (const auto& s : batch.samples) {
            nlohmann::json j;
            j["emotion"] = emotion_name(s.label);
            j["text"] = s.text;
            j["prompt_hash"] = batch.prompt_hash;
            j["backend_id"] = batch.backend_id;
            jsonl += j.dump() + "\n";
        }
        const std::string path = cfg.run_dir() + "/generated_" + strategy_arg + "_" +
                                 emotion_name(e) + ".jsonl";
        write_file(path, jsonl);
        std::cout << "generated " << batch.samples.size() << " " << emotion_name(e)
                  << " tweets -> " << path << "\n";
    }
    std::cout << "cache: " << cache_path_for(cfg, *backend) << "\n";
    return 0;
}

int cmd_run(const CliConfig& cfg, bool ablation) {
    Corpus corpus = load_corpus(cfg);
    auto backend = cli::make_backend(cfg);
    SyntheticCache cache(cache_path_for(cfg, *backend));

    RunResult result = ablation ? run_ablation(corpus, cfg.experiment, *backend, &cache)
                                : run_experiment(corpus, cfg.experiment, *backend, &cache);
    auto written = emit_reports(result, cfg.run_dir());

    std::cout << result.rows.size() << " result rows\n";
    // final-increment mean macro F1 per strategy and seed size
    std::map<std::pair<std::string, int>, std::pair<double, int>> finals;
    int max_increment = 0;
    for (const auto& row : result.rows) max_increment = std::max(max_increment, row.increment_index);
    for (const auto& row : result.rows) {
        if (row.increment_index != max_increment) continue;
        auto& [sum, n] = finals[{strategy_name(row.strategy), row.seed_size}];
        sum += row.macro_f1;
        n += 1;
    }
    for (const auto& [key, value] : finals) {
        std::cout << "  " << key.first << " seed " << key.second << " final macro F1: "
                  << format_double(value.first / value.second, 4) << "\n";
    }
    for (const auto& path : written) std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_lingstats(const CliConfig& cfg, int seed_size) {
    Corpus real = load_corpus(cfg);

    auto load_pool = [&](const std::string& strategy, Origin origin) {
        const std::string path = cfg.run_dir() + "/synthetic_" + strategy + "_seed" +
                                 std::to_string(seed_size) + ".jsonl";
        require(fs::exists(path), ErrorKind::Io,
                path + " not found; run `emoforge run` with this config first");
        Corpus corpus;
        std::int64_t next_id = origin_id_base(origin);
        std::istringstream in(read_file(path));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            nlohmann::json j = nlohmann::json::parse(line);
            corpus.add({next_id++, j.at("text").get<std::string>(),
                        emotion_from_name(j.at("emotion").get<std::string>()), origin});
        }
        return corpus;
    };
    Corpus shap_pool = load_pool("shap_guided", Origin::synthetic_shap);
    Corpus naive_pool = load_pool("naive", Origin::synthetic_naive);

    DiversityReport report =
        diversity_report(real, shap_pool, naive_pool, cfg.experiment.preprocess);
    fs::create_directories(cfg.run_dir() + "/charts");
    const std::string tag = "_seed" + std::to_string(seed_size);
    write_file(cfg.run_dir() + "/diversity" + tag + ".json", report.to_json_string());
    write_file(cfg.run_dir() + "/diversity" + tag + ".csv", report.to_csv());

    for (const auto& [name, rows] : {std::pair{std::string("bigrams"), &report.top_bigrams},
                                     std::pair{std::string("trigrams"), &report.top_trigrams}}) {
        std::vector<std::string> labels;
        SvgBarGroup real_g{"real", {}}, shap_g{"shap", {}}, naive_g{"naive", {}};
        for (const auto& row : *rows) {
            labels.push_back(row.ngram);
            real_g.values.push_back(row.real);
            shap_g.values.push_back(row.shap);
            naive_g.values.push_back(row.naive);
        }
        write_file(cfg.run_dir() + "/charts/top_" + name + tag + ".svg",
                   svg_bar_chart("POS " + name + ", relative frequency", labels,
                                 {real_g, shap_g, naive_g}));
    }

    std::cout << "TTR real " << format_double(report.ttr_per_dataset.at("real"), 4) << ", shap "
              << format_double(report.ttr_per_dataset.at("shap"), 4) << ", naive "
              << format_double(report.ttr_per_dataset.at("naive"), 4) << "\n";
    for (const auto& [key, value] : report.jaccard_per_emotion) {
        std::cout << "jaccard " << emotion_name(key.first) << " vs " << key.second << ": "
                  << format_double(value, 4) << "\n";
    }
    std::cout << "wrote diversity report under " << cfg.run_dir() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"emoforge: interpretability-guided synthetic augmentation for emotion "
                 "classification"};
    app.require_subcommand(1);

    std::string config_path;
    cli::Overrides overrides;
    int seed_size_flag = -1;
    std::string strategy_arg = "shap";
    std::string emotion_arg = "all";
    int count = 20;
    bool ablation = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file")->required();
        cmd->add_option("--seed", overrides.seed, "master RNG seed override");
        cmd->add_option("--jobs", overrides.jobs, "max concurrent folds");
        cmd->add_option("--text", overrides.text_path, "override data.text_path");
        cmd->add_option("--labels", overrides.labels_path, "override data.labels_path");
        return cmd;
    };

    auto* ingest = add_common(app.add_subcommand("ingest", "load a corpus and print class counts"));
    auto* split = add_common(app.add_subcommand("split", "write a holdout/seed/pool plan"));
    split->add_option("--seed-size", seed_size_flag, "seed size (default: first configured)");
    auto* train_cmd = add_common(app.add_subcommand("train", "train the seed-only baseline"));
    train_cmd->add_option("--seed-size", seed_size_flag);
    auto* keywords_cmd =
        add_common(app.add_subcommand("keywords", "extract SHAP-filtered differential keywords"));
    keywords_cmd->add_option("--seed-size", seed_size_flag);
    auto* generate =
        add_common(app.add_subcommand("generate", "generate synthetic tweets via the backend"));
    generate->add_option("--seed-size", seed_size_flag);
    generate->add_option("--strategy", strategy_arg, "shap | naive");
    generate->add_option("--emotion", emotion_arg, "anger|joy|optimism|sadness|all");
    generate->add_option("--count", count, "tweets per emotion");
    generate->add_option("--backend", overrides.backend_kind, "mock | http");
    auto* run = add_common(app.add_subcommand("run", "run the full incremental experiment"));
    run->add_flag("--ablation", ablation, "exemplar ablation instead of the standard strategies");
    run->add_option("--backend", overrides.backend_kind, "mock | http");
    auto* lingstats =
        add_common(app.add_subcommand("lingstats", "lexical/syntactic diversity report"));
    lingstats->add_option("--seed-size", seed_size_flag);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CliConfig cfg = cli::load_config(config_path);
        cli::apply_overrides(cfg, overrides);
        std::cout << "config hash: " << cfg.config_hash() << "\n";
        const int seed_size = seed_size_flag > 0 ? seed_size_flag : cfg.experiment.seed_sizes.at(0);

        if (app.got_subcommand(ingest)) return cmd_ingest(cfg);
        if (app.got_subcommand(split)) return cmd_split(cfg, seed_size);
        if (app.got_subcommand(train_cmd)) return cmd_train(cfg, seed_size);
        if (app.got_subcommand(keywords_cmd)) return cmd_keywords(cfg, seed_size);
        if (app.got_subcommand(generate)) return cmd_generate(cfg, seed_size, strategy_arg, emotion_arg, count);
        if (app.got_subcommand(run)) return cmd_run(cfg, ablation);
        if (app.got_subcommand(lingstats)) return cmd_lingstats(cfg, seed_size);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
