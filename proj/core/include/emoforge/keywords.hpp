#pragma once

#include <string>
#include <vector>

#include "emoforge/corpus.hpp"
#include "emoforge/shap.hpp"
#include "emoforge/tfidf.hpp"

namespace emoforge {

struct DifferentialScore {
    std::string term;
    std::uint32_t feature = 0;
    // mean TF-IDF in the target class minus the mean over everything else pooled
    double score = 0.0;
    double shap_importance = 0.0;
};

std::vector<DifferentialScore> differential_scores(const std::vector<SparseVector>& vectors,
                                                   const std::vector<Emotion>& labels,
                                                   Emotion target,
                                                   const std::vector<std::string>& terms);

struct ImportanceFilterPolicy {
    // threshold = this percentile of the class's non-zero importance values
    double percentile = 50.0;
};

struct FilteredScores {
    std::vector<DifferentialScore> survivors;
    double threshold_used = 0.0;
};

FilteredScores filter_by_importance(const std::vector<DifferentialScore>& scores,
                                    const GlobalImportance& importance, Emotion target,
                                    const ImportanceFilterPolicy& policy = {});

struct KeywordSet {
    Emotion emotion = Emotion::anger;
    std::vector<std::string> positive;  // descending differential score
    std::vector<std::string> negative;  // ascending differential score
    double threshold_used = 0.0;
    int k_pos = 0;
    int k_neg = 0;
    std::string model_hash;
    std::string split_hash;

    std::string to_json_string() const;
    static KeywordSet from_json_string(const std::string& text);
};

KeywordSet split_keywords(const FilteredScores& filtered, Emotion emotion, int k_pos, int k_neg);

}  // namespace emoforge
