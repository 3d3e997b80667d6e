#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emoforge/corpus.hpp"

namespace emoforge {

struct SparseVector {
    // (index, value) pairs with strictly increasing indices
    std::vector<std::pair<std::uint32_t, double>> entries;
    std::uint32_t dimension = 0;

    double at(std::uint32_t index) const;
    double l2_norm() const;
};

struct Vocabulary {
    std::map<std::string, std::uint32_t> term_to_index;  // dense 0..V-1
    std::vector<std::string> terms;                      // index -> term
    std::vector<int> doc_freq;
    int n_docs = 0;

    std::uint32_t size() const { return static_cast<std::uint32_t>(terms.size()); }
};

struct TfidfConfig {
    int min_df = 1;
    bool sublinear_tf = false;
    bool l2_normalize = true;
};

class TfidfModel {
public:
    static TfidfModel fit(const std::vector<std::vector<std::string>>& docs,
                          const TfidfConfig& config);

    SparseVector transform(const std::vector<std::string>& doc) const;

    const Vocabulary& vocab() const { return vocab_; }
    const std::vector<double>& idf() const { return idf_; }
    const TfidfConfig& config() const { return config_; }
    std::uint32_t dimension() const { return vocab_.size(); }

    std::string to_json_string() const;
    static TfidfModel from_json_string(const std::string& text);

private:
    Vocabulary vocab_;
    std::vector<double> idf_;
    TfidfConfig config_;
};

// Arithmetic mean of the target-class rows, densified per feature.
std::vector<double> mean_tfidf_by_class(const std::vector<SparseVector>& vectors,
                                        const std::vector<Emotion>& labels, Emotion target);

}  // namespace emoforge
