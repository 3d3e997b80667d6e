#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace emoforge {

// The four TweetEval emotion classes. Codes are the on-disk label values.
enum class Emotion : int { anger = 0, joy = 1, optimism = 2, sadness = 3 };

inline constexpr int kNumEmotions = 4;
inline constexpr std::int64_t kSyntheticIdBase = 1'000'000;

const char* emotion_name(Emotion e);
Emotion emotion_from_code(int code);
Emotion emotion_from_name(const std::string& name);

std::vector<Emotion> all_emotions();

enum class Origin { real, synthetic_shap, synthetic_naive };

const char* origin_name(Origin o);

// id block per origin so provenance survives joins across reports
std::int64_t origin_id_base(Origin o);

struct LabeledSample {
    std::int64_t id = 0;
    std::string text;
    Emotion label = Emotion::anger;
    Origin origin = Origin::real;
};

class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<LabeledSample> samples);

    void add(LabeledSample sample);

    const std::vector<LabeledSample>& samples() const { return samples_; }
    const LabeledSample& by_id(std::int64_t id) const;
    bool contains(std::int64_t id) const;
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    std::vector<std::int64_t> ids() const;

private:
    std::vector<LabeledSample> samples_;
    std::map<std::int64_t, std::size_t> index_;
};

// Parallel line-aligned TweetEval files: <split>_text.txt / <split>_labels.txt.
Corpus load_tweeteval(const std::string& text_path, const std::string& labels_path);

struct PreprocessConfig {
    bool strip_mentions = true;
    bool strip_hashtag_symbol = true;
    bool strip_non_alphanumeric = true;
    bool lowercase = true;
    // Surface forms that survive stripping verbatim (modulo lowercasing):
    // negations, intensifiers and the explicit emotion terms.
    std::set<std::string> preserve_list = default_preserve_list();

    static std::set<std::string> default_preserve_list();
};

std::vector<std::string> preprocess(const std::string& text, const PreprocessConfig& config);

struct SplitPlan {
    std::vector<std::int64_t> holdout_ids;
    std::vector<std::int64_t> seed_ids;
    std::vector<std::int64_t> pool_ids;
    int seed_size = 0;
    int increment_size = 0;
    int n_increments = 0;
    std::uint64_t rng_seed = 0;

    std::string to_json_string() const;
    static SplitPlan from_json_string(const std::string& text);
};

// Label-stratified holdout/seed draw; remainder becomes the pool.
SplitPlan make_splits(const Corpus& corpus, int holdout_n, int seed_n, int increment,
                      int n_increments, std::uint64_t rng_seed);

// Fresh stratified seed from (corpus - holdout) keeping the holdout fixed;
// this is how cross-validation folds re-randomize seed/pool composition.
SplitPlan resplit_seed_pool(const Corpus& corpus, const SplitPlan& base, std::uint64_t fold_seed);

std::map<Emotion, double> class_distribution(const Corpus& corpus);

}  // namespace emoforge
