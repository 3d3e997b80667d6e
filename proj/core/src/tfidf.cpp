#include "emoforge/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "emoforge/errors.hpp"

namespace emoforge {

double SparseVector::at(std::uint32_t index) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), index,
                               [](const auto& e, std::uint32_t i) { return e.first < i; });
    if (it != entries.end() && it->first == index) return it->second;
    return 0.0;
}

double SparseVector::l2_norm() const {
    double sq = 0.0;
    for (const auto& [i, v] : entries) sq += v * v;
    return std::sqrt(sq);
}

TfidfModel TfidfModel::fit(const std::vector<std::vector<std::string>>& docs,
                           const TfidfConfig& config) {
    require(!docs.empty(), ErrorKind::EmptyInput, "tfidf fit on zero documents");

    std::map<std::string, int> df;
    for (const auto& doc : docs) {
        std::set<std::string> seen(doc.begin(), doc.end());
        for (const auto& t : seen) ++df[t];
    }

    TfidfModel model;
    model.config_ = config;
    model.vocab_.n_docs = static_cast<int>(docs.size());
    // lexicographic index assignment keeps the vocabulary independent of
    // document order (df map is already sorted)
    for (const auto& [term, count] : df) {
        if (count < config.min_df) continue;
        model.vocab_.term_to_index[term] = model.vocab_.size();
        model.vocab_.terms.push_back(term);
        model.vocab_.doc_freq.push_back(count);
    }
    model.idf_.resize(model.vocab_.size());
    const double n = 1.0 + model.vocab_.n_docs;
    for (std::uint32_t i = 0; i < model.vocab_.size(); ++i) {
        model.idf_[i] = std::log(n / (1.0 + model.vocab_.doc_freq[i])) + 1.0;
    }
    return model;
}

SparseVector TfidfModel::transform(const std::vector<std::string>& doc) const {
    std::map<std::uint32_t, int> counts;
    for (const auto& token : doc) {
        auto it = vocab_.term_to_index.find(token);
        if (it != vocab_.term_to_index.end()) ++counts[it->second];
    }
    SparseVector vec;
    vec.dimension = vocab_.size();
    vec.entries.reserve(counts.size());
    for (const auto& [index, count] : counts) {
        double tf = config_.sublinear_tf ? 1.0 + std::log(static_cast<double>(count))
                                         : static_cast<double>(count);
        vec.entries.emplace_back(index, tf * idf_[index]);
    }
    if (config_.l2_normalize) {
        double norm = vec.l2_norm();
        if (norm > 0.0) {
            for (auto& [i, v] : vec.entries) v /= norm;
        }
    }
    return vec;
}

std::vector<double> mean_tfidf_by_class(const std::vector<SparseVector>& vectors,
                                        const std::vector<Emotion>& labels, Emotion target) {
    require(vectors.size() == labels.size(), ErrorKind::LengthMismatch,
            "vectors/labels size mismatch");
    std::uint32_t dim = vectors.empty() ? 0 : vectors.front().dimension;
    std::vector<double> sum(dim, 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (labels[i] != target) continue;
        ++count;
        for (const auto& [idx, v] : vectors[i].entries) sum[idx] += v;
    }
    require(count > 0, ErrorKind::NoTargetSamples,
            std::string("no samples of class ") + emotion_name(target));
    for (auto& v : sum) v /= static_cast<double>(count);
    return sum;
}

std::string TfidfModel::to_json_string() const {
    nlohmann::json j;
    j["config"] = {{"min_df", config_.min_df},
                   {"sublinear_tf", config_.sublinear_tf},
                   {"l2_normalize", config_.l2_normalize}};
    j["n_docs"] = vocab_.n_docs;
    j["terms"] = vocab_.terms;
    j["doc_freq"] = vocab_.doc_freq;
    return j.dump(2);
}

TfidfModel TfidfModel::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TfidfModel model;
    model.config_.min_df = j.at("config").at("min_df").get<int>();
    model.config_.sublinear_tf = j.at("config").at("sublinear_tf").get<bool>();
    model.config_.l2_normalize = j.at("config").at("l2_normalize").get<bool>();
    model.vocab_.n_docs = j.at("n_docs").get<int>();
    model.vocab_.terms = j.at("terms").get<std::vector<std::string>>();
    model.vocab_.doc_freq = j.at("doc_freq").get<std::vector<int>>();
    require(model.vocab_.terms.size() == model.vocab_.doc_freq.size(), ErrorKind::Io,
            "corrupt tfidf model: terms/doc_freq length mismatch");
    for (std::uint32_t i = 0; i < model.vocab_.size(); ++i) {
        model.vocab_.term_to_index[model.vocab_.terms[i]] = i;
    }
    model.idf_.resize(model.vocab_.size());
    const double n = 1.0 + model.vocab_.n_docs;
    for (std::uint32_t i = 0; i < model.vocab_.size(); ++i) {
        model.idf_[i] = std::log(n / (1.0 + model.vocab_.doc_freq[i])) + 1.0;
    }
    return model;
}

}  // namespace emoforge
