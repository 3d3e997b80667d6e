#include "emoforge/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "emoforge/errors.hpp"

namespace emoforge {

std::vector<DifferentialScore> differential_scores(const std::vector<SparseVector>& vectors,
                                                   const std::vector<Emotion>& labels,
                                                   Emotion target,
                                                   const std::vector<std::string>& terms) {
    require(vectors.size() == labels.size(), ErrorKind::LengthMismatch,
            "vectors/labels size mismatch");
    const std::uint32_t dim = vectors.empty() ? 0 : vectors.front().dimension;
    require(terms.size() == dim, ErrorKind::VocabularyMismatch,
            "term list does not match vector dimension");

    std::vector<double> target_sum(dim, 0.0), rest_sum(dim, 0.0);
    std::size_t n_target = 0, n_rest = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto& sum = labels[i] == target ? target_sum : rest_sum;
        (labels[i] == target ? n_target : n_rest) += 1;
        for (const auto& [idx, v] : vectors[i].entries) sum[idx] += v;
    }
    require(n_target > 0, ErrorKind::NoTargetSamples,
            std::string("no samples of class ") + emotion_name(target));
    require(n_rest > 0, ErrorKind::NoComplementSamples,
            std::string("no samples outside class ") + emotion_name(target));

    std::vector<DifferentialScore> out;
    out.reserve(dim);
    for (std::uint32_t f = 0; f < dim; ++f) {
        DifferentialScore ds;
        ds.term = terms[f];
        ds.feature = f;
        ds.score = target_sum[f] / static_cast<double>(n_target) -
                   rest_sum[f] / static_cast<double>(n_rest);
        out.push_back(std::move(ds));
    }
    return out;
}

FilteredScores filter_by_importance(const std::vector<DifferentialScore>& scores,
                                    const GlobalImportance& importance, Emotion target,
                                    const ImportanceFilterPolicy& policy) {
    const auto cls = static_cast<std::size_t>(target);
    require(cls < importance.mean_abs_phi.size(), ErrorKind::VocabularyMismatch,
            "importance matrix lacks the target class");
    const auto& imp = importance.mean_abs_phi[cls];
    for (const auto& s : scores) {
        require(s.feature < imp.size(), ErrorKind::VocabularyMismatch,
                "scored term '" + s.term + "' outside the importance vocabulary");
    }

    std::vector<double> nonzero;
    for (double v : imp) {
        if (v > 0.0) nonzero.push_back(v);
    }
    FilteredScores out;
    if (nonzero.empty()) return out;  // nothing predictive, nothing survives

    // nearest-rank percentile over the non-zero importances
    std::sort(nonzero.begin(), nonzero.end());
    const double p = std::clamp(policy.percentile, 0.0, 100.0);
    std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * nonzero.size()));
    if (rank > 0) --rank;
    out.threshold_used = nonzero[rank];

    for (const auto& s : scores) {
        if (imp[s.feature] >= out.threshold_used) {
            DifferentialScore kept = s;
            kept.shap_importance = imp[s.feature];
            out.survivors.push_back(std::move(kept));
        }
    }
    return out;
}

KeywordSet split_keywords(const FilteredScores& filtered, Emotion emotion, int k_pos, int k_neg) {
    require(!filtered.survivors.empty(), ErrorKind::EmptyAfterFilter,
            std::string("no keywords past the importance filter for ") + emotion_name(emotion));

    std::vector<const DifferentialScore*> ranked;
    ranked.reserve(filtered.survivors.size());
    for (const auto& s : filtered.survivors) ranked.push_back(&s);
    std::sort(ranked.begin(), ranked.end(), [](const auto* a, const auto* b) {
        if (a->score != b->score) return a->score > b->score;
        return a->term < b->term;
    });

    KeywordSet set;
    set.emotion = emotion;
    set.threshold_used = filtered.threshold_used;
    set.k_pos = k_pos;
    set.k_neg = k_neg;

    const int n = static_cast<int>(ranked.size());
    const int take_pos = std::min(k_pos, n);
    for (int i = 0; i < take_pos; ++i) set.positive.push_back(ranked[i]->term);

    // bottom k_neg by ascending score; a term claimed by the positive set
    // loses its negative slot (no backfill), so the sets stay disjoint
    std::vector<const DifferentialScore*> ascending(ranked);
    std::sort(ascending.begin(), ascending.end(), [](const auto* a, const auto* b) {
        if (a->score != b->score) return a->score < b->score;
        return a->term < b->term;
    });
    std::set<std::string> taken(set.positive.begin(), set.positive.end());
    for (int i = 0; i < std::min(k_neg, n); ++i) {
        if (!taken.count(ascending[i]->term)) set.negative.push_back(ascending[i]->term);
    }
    return set;
}

std::string KeywordSet::to_json_string() const {
    nlohmann::json j;
    j["emotion"] = emotion_name(emotion);
    j["positive"] = positive;
    j["negative"] = negative;
    j["threshold_used"] = threshold_used;
    j["k_pos"] = k_pos;
    j["k_neg"] = k_neg;
    j["provenance"] = {{"model_hash", model_hash}, {"split_hash", split_hash}};
    return j.dump(2);
}

KeywordSet KeywordSet::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    KeywordSet set;
    set.emotion = emotion_from_name(j.at("emotion").get<std::string>());
    set.positive = j.at("positive").get<std::vector<std::string>>();
    set.negative = j.at("negative").get<std::vector<std::string>>();
    set.threshold_used = j.at("threshold_used").get<double>();
    set.k_pos = j.at("k_pos").get<int>();
    set.k_neg = j.at("k_neg").get<int>();
    if (j.contains("provenance")) {
        set.model_hash = j["provenance"].value("model_hash", "");
        set.split_hash = j["provenance"].value("split_hash", "");
    }
    return set;
}

}  // namespace emoforge
