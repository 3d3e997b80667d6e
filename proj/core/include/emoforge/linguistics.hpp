#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "emoforge/corpus.hpp"

namespace emoforge {

enum class PosTag {
    NOUN, VERB, ADJ, ADV, PRON, AUX, DET, ADP, PART, NUM, PROPN, INTJ, CONJ, PUNCT, SYM, X,
};

const char* pos_tag_name(PosTag tag);

// Deterministic rule tagger: closed-class lexicon, then suffix heuristics,
// then NOUN. Good enough for within-run distribution comparisons; absolute
// values are not comparable across taggers.
std::vector<PosTag> pos_tag(const std::vector<std::string>& tokens);

double ttr(const std::vector<std::string>& tokens);

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct NgramDistribution {
    int n = 2;
    std::map<std::vector<PosTag>, std::int64_t> counts;
    std::map<std::vector<PosTag>, double> probabilities;

    std::int64_t total() const;
};

NgramDistribution ngram_distribution(const std::vector<std::vector<PosTag>>& docs, int n);

// Jensen-Shannon divergence, base-2 logs, zero-filled union support
double jsd(const NgramDistribution& p, const NgramDistribution& q);

struct NgramRow {
    std::string ngram;
    double real = 0.0;
    double shap = 0.0;
    double naive = 0.0;
};

struct DiversityReport {
    std::map<std::string, double> ttr_per_dataset;  // real / shap / naive
    // (emotion, variant) -> distinct-word overlap with the real data
    std::map<std::pair<Emotion, std::string>, double> jaccard_per_emotion;
    std::map<std::string, double> jsd_bigram;   // variant -> value
    std::map<std::string, double> jsd_trigram;
    std::vector<NgramRow> top_bigrams;   // by real-data frequency
    std::vector<NgramRow> top_trigrams;

    std::string to_json_string() const;
    std::string to_csv() const;
};

DiversityReport diversity_report(const Corpus& real, const Corpus& shap_synth,
                                 const Corpus& naive_synth, const PreprocessConfig& config,
                                 int top_k = 20);

}  // namespace emoforge
