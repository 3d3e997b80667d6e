#pragma once

#include <string>
#include <vector>

#include "emoforge/gbdt.hpp"

namespace emoforge {

// Per-class, per-feature attributions on the margin scale. Local accuracy:
// sum_f phi[c][f] + base[c] equals margin(x, c).
struct ShapExplanation {
    std::vector<std::vector<double>> phi;  // [class][feature]
    std::vector<double> base;              // expected margin under node covers

    double phi_sum(int cls) const;
};

// Exact Shapley values of the cover-weighted expectation game, computed per
// tree by the polynomial path algorithm and summed across the ensemble.
ShapExplanation tree_shap(const Ensemble& model, const SparseVector& x);

// Subset-enumeration oracle for the same game; only viable when the model
// touches at most 20 features.
ShapExplanation brute_force_shap(const Ensemble& model, const SparseVector& x);

struct GlobalImportance {
    std::vector<std::vector<double>> mean_abs_phi;  // [class][feature]
    std::size_t n_samples = 0;
};

GlobalImportance global_importance(const Ensemble& model, const std::vector<SparseVector>& X);

// one row per (sample, class, feature) with nonzero attribution
std::string explanations_to_csv(const std::vector<std::int64_t>& sample_ids,
                                const std::vector<ShapExplanation>& explanations,
                                const std::vector<std::string>& feature_names);

}  // namespace emoforge
