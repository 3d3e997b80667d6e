#include "emoforge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emoforge/errors.hpp"
#include "emoforge/rng.hpp"

namespace emoforge {

const char* emotion_name(Emotion e) {
    switch (e) {
        case Emotion::anger: return "anger";
        case Emotion::joy: return "joy";
        case Emotion::optimism: return "optimism";
        case Emotion::sadness: return "sadness";
    }
    return "unknown";
}

Emotion emotion_from_code(int code) {
    require(code >= 0 && code < kNumEmotions, ErrorKind::InvalidLabel,
            "label code out of range: " + std::to_string(code));
    return static_cast<Emotion>(code);
}

Emotion emotion_from_name(const std::string& name) {
    for (Emotion e : all_emotions()) {
        if (name == emotion_name(e)) return e;
    }
    fail(ErrorKind::InvalidLabel, "unknown emotion name: " + name);
}

std::vector<Emotion> all_emotions() {
    return {Emotion::anger, Emotion::joy, Emotion::optimism, Emotion::sadness};
}

const char* origin_name(Origin o) {
    switch (o) {
        case Origin::real: return "real";
        case Origin::synthetic_shap: return "synthetic_shap";
        case Origin::synthetic_naive: return "synthetic_naive";
    }
    return "unknown";
}

std::int64_t origin_id_base(Origin o) {
    switch (o) {
        case Origin::real: return 0;
        case Origin::synthetic_shap: return kSyntheticIdBase;
        case Origin::synthetic_naive: return 2 * kSyntheticIdBase;
    }
    return 0;
}

Corpus::Corpus(std::vector<LabeledSample> samples) {
    for (auto& s : samples) add(std::move(s));
}

void Corpus::add(LabeledSample sample) {
    require(!index_.count(sample.id), ErrorKind::InvalidLabel,
            "duplicate sample id " + std::to_string(sample.id));
    index_[sample.id] = samples_.size();
    samples_.push_back(std::move(sample));
}

const LabeledSample& Corpus::by_id(std::int64_t id) const {
    auto it = index_.find(id);
    require(it != index_.end(), ErrorKind::InvalidLabel, "unknown sample id " + std::to_string(id));
    return samples_[it->second];
}

bool Corpus::contains(std::int64_t id) const { return index_.count(id) > 0; }

std::vector<std::int64_t> Corpus::ids() const {
    std::vector<std::int64_t> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.id);
    return out;
}

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.is_open(), ErrorKind::Io, "cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Corpus load_tweeteval(const std::string& text_path, const std::string& labels_path) {
    auto texts = read_lines(text_path);
    auto labels = read_lines(labels_path);
    require(!texts.empty(), ErrorKind::EmptyFile, text_path + " has no lines");
    require(!labels.empty(), ErrorKind::EmptyFile, labels_path + " has no lines");
    require(texts.size() == labels.size(), ErrorKind::LineCountMismatch,
            std::to_string(texts.size()) + " text lines vs " + std::to_string(labels.size()) +
                " label lines");

    Corpus corpus;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        require(!is_blank(texts[i]), ErrorKind::EmptyText,
                "blank tweet at line " + std::to_string(i));
        const std::string& raw = labels[i];
        int code = -1;
        try {
            std::size_t pos = 0;
            code = std::stoi(raw, &pos);
            while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
            if (pos != raw.size()) code = -1;
        } catch (const std::exception&) {
            code = -1;
        }
        require(code >= 0 && code < kNumEmotions, ErrorKind::InvalidLabel,
                "line " + std::to_string(i) + ": '" + raw + "'");
        corpus.add({static_cast<std::int64_t>(i), texts[i], static_cast<Emotion>(code), Origin::real});
    }
    return corpus;
}

std::set<std::string> PreprocessConfig::default_preserve_list() {
    return {
        // negation markers and intensity modifiers
        "not", "never", "can't", "won't", "don't", "isn't",
        "very", "extremely", "quite", "so", "really",
        // emotion names and explicit emotion terms
        "anger", "joy", "optimism", "sadness",
        "angry", "fuming", "outrage", "bully",
        "love", "happy", "hilarious",
        "fears", "worry",
        "depression", "lost", "depressing",
    };
}

namespace {

bool is_ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

std::string clean_chunk(const std::string& chunk, const PreprocessConfig& config) {
    std::string s = chunk;
    if (config.strip_mentions && !s.empty() && s[0] == '@' && s.size() > 1) return "";
    if (config.strip_hashtag_symbol) {
        std::size_t i = 0;
        while (i < s.size() && s[i] == '#') ++i;
        s.erase(0, i);
    }
    if (!config.strip_non_alphanumeric) return s;

    // keep apostrophes provisionally so protected contractions survive
    std::string candidate;
    candidate.reserve(s.size());
    for (unsigned char c : s) {
        if (is_ascii_alnum(c) || c == '\'') candidate.push_back(static_cast<char>(c));
    }
    std::size_t b = candidate.find_first_not_of('\'');
    if (b == std::string::npos) return "";
    std::size_t e = candidate.find_last_not_of('\'');
    candidate = candidate.substr(b, e - b + 1);

    if (config.preserve_list.count(candidate)) return candidate;
    candidate.erase(std::remove(candidate.begin(), candidate.end(), '\''), candidate.end());
    return candidate;
}

}  // namespace

std::vector<std::string> preprocess(const std::string& text, const PreprocessConfig& config) {
    std::string lowered;
    lowered.reserve(text.size());
    for (unsigned char c : text) {
        lowered.push_back(config.lowercase && c < 0x80
                              ? static_cast<char>(std::tolower(c))
                              : static_cast<char>(c));
    }

    std::vector<std::string> tokens;
    std::istringstream in(lowered);
    std::string chunk;
    while (in >> chunk) {
        std::string token = clean_chunk(chunk, config);
        if (!token.empty()) tokens.push_back(std::move(token));
    }
    return tokens;
}

namespace {

// Largest-remainder quotas per class, clamped to availability; any clamped
// deficit spills to classes with spare capacity.
std::vector<int> stratified_quotas(const std::vector<int>& available,
                                   const std::vector<double>& fractions, int total) {
    const int k = static_cast<int>(available.size());
    std::vector<int> quota(k, 0);
    std::vector<double> remainder(k, 0.0);
    int assigned = 0;
    for (int c = 0; c < k; ++c) {
        double exact = fractions[c] * total;
        quota[c] = static_cast<int>(exact);
        remainder[c] = exact - quota[c];
        assigned += quota[c];
    }
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return remainder[a] > remainder[b]; });
    for (int i = 0; assigned < total && i < k; ++i) {
        ++quota[order[i]];
        ++assigned;
    }
    // clamp and redistribute
    int deficit = 0;
    for (int c = 0; c < k; ++c) {
        if (quota[c] > available[c]) {
            deficit += quota[c] - available[c];
            quota[c] = available[c];
        }
    }
    while (deficit > 0) {
        int best = -1;
        for (int c = 0; c < k; ++c) {
            int spare = available[c] - quota[c];
            if (spare > 0 && (best < 0 || spare > available[best] - quota[best])) best = c;
        }
        require(best >= 0, ErrorKind::InsufficientData, "cannot satisfy stratified quota");
        ++quota[best];
        --deficit;
    }
    return quota;
}

struct StratifiedDraw {
    std::vector<std::int64_t> first;   // e.g. holdout
    std::vector<std::int64_t> second;  // e.g. seed
    std::vector<std::int64_t> rest;    // pool
};

StratifiedDraw draw_stratified(const Corpus& corpus, const std::vector<std::int64_t>& candidates,
                               const std::vector<double>& fractions, int first_n, int second_n,
                               std::uint64_t rng_seed) {
    std::vector<std::vector<std::int64_t>> per_class(kNumEmotions);
    for (std::int64_t id : candidates) {
        per_class[static_cast<int>(corpus.by_id(id).label)].push_back(id);
    }
    Rng rng(rng_seed);
    for (auto& ids : per_class) rng.shuffle(ids);

    std::vector<int> available(kNumEmotions);
    for (int c = 0; c < kNumEmotions; ++c) available[c] = static_cast<int>(per_class[c].size());

    auto first_quota = stratified_quotas(available, fractions, first_n);
    std::vector<int> remaining(kNumEmotions);
    for (int c = 0; c < kNumEmotions; ++c) remaining[c] = available[c] - first_quota[c];
    auto second_quota = stratified_quotas(remaining, fractions, second_n);

    StratifiedDraw out;
    for (int c = 0; c < kNumEmotions; ++c) {
        const auto& ids = per_class[c];
        int i = 0;
        for (; i < first_quota[c]; ++i) out.first.push_back(ids[i]);
        for (; i < first_quota[c] + second_quota[c]; ++i) out.second.push_back(ids[i]);
        for (; i < available[c]; ++i) out.rest.push_back(ids[i]);
    }
    std::sort(out.first.begin(), out.first.end());
    std::sort(out.second.begin(), out.second.end());
    std::sort(out.rest.begin(), out.rest.end());
    return out;
}

std::vector<double> corpus_fractions(const Corpus& corpus) {
    std::vector<double> fractions(kNumEmotions, 0.0);
    for (const auto& s : corpus.samples()) fractions[static_cast<int>(s.label)] += 1.0;
    for (auto& f : fractions) f /= static_cast<double>(corpus.size());
    return fractions;
}

}  // namespace

SplitPlan make_splits(const Corpus& corpus, int holdout_n, int seed_n, int increment,
                      int n_increments, std::uint64_t rng_seed) {
    require(holdout_n >= 0 && seed_n >= 1 && increment >= 0 && n_increments >= 0,
            ErrorKind::InsufficientData, "nonsensical split sizes");
    const std::int64_t needed = static_cast<std::int64_t>(holdout_n) + seed_n +
                                static_cast<std::int64_t>(increment) * n_increments;
    require(needed <= static_cast<std::int64_t>(corpus.size()), ErrorKind::InsufficientData,
            "corpus of " + std::to_string(corpus.size()) + " cannot cover holdout+seed+increments=" +
                std::to_string(needed));

    auto draw = draw_stratified(corpus, corpus.ids(), corpus_fractions(corpus), holdout_n, seed_n,
                                rng_seed);
    SplitPlan plan;
    plan.holdout_ids = std::move(draw.first);
    plan.seed_ids = std::move(draw.second);
    plan.pool_ids = std::move(draw.rest);
    plan.seed_size = seed_n;
    plan.increment_size = increment;
    plan.n_increments = n_increments;
    plan.rng_seed = rng_seed;
    return plan;
}

SplitPlan resplit_seed_pool(const Corpus& corpus, const SplitPlan& base, std::uint64_t fold_seed) {
    std::set<std::int64_t> holdout(base.holdout_ids.begin(), base.holdout_ids.end());
    std::vector<std::int64_t> candidates;
    for (std::int64_t id : corpus.ids()) {
        if (!holdout.count(id)) candidates.push_back(id);
    }
    auto draw = draw_stratified(corpus, candidates, corpus_fractions(corpus), base.seed_size, 0,
                                fold_seed);
    SplitPlan plan = base;
    plan.seed_ids = std::move(draw.first);
    plan.pool_ids = std::move(draw.rest);
    plan.rng_seed = fold_seed;
    return plan;
}

std::map<Emotion, double> class_distribution(const Corpus& corpus) {
    require(!corpus.empty(), ErrorKind::EmptyCorpus, "class_distribution of empty corpus");
    std::map<Emotion, double> out;
    for (const auto& s : corpus.samples()) out[s.label] += 1.0;
    for (auto& [e, v] : out) v /= static_cast<double>(corpus.size());
    return out;
}

std::string SplitPlan::to_json_string() const {
    nlohmann::json j;
    j["holdout_ids"] = holdout_ids;
    j["seed_ids"] = seed_ids;
    j["pool_ids"] = pool_ids;
    j["seed_size"] = seed_size;
    j["increment_size"] = increment_size;
    j["n_increments"] = n_increments;
    j["rng_seed"] = rng_seed;
    return j.dump(2);
}

SplitPlan SplitPlan::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SplitPlan plan;
    plan.holdout_ids = j.at("holdout_ids").get<std::vector<std::int64_t>>();
    plan.seed_ids = j.at("seed_ids").get<std::vector<std::int64_t>>();
    plan.pool_ids = j.at("pool_ids").get<std::vector<std::int64_t>>();
    plan.seed_size = j.at("seed_size").get<int>();
    plan.increment_size = j.at("increment_size").get<int>();
    plan.n_increments = j.at("n_increments").get<int>();
    plan.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return plan;
}

}  // namespace emoforge
