#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emoforge/tfidf.hpp"

namespace emoforge {

// Flat node storage; feature < 0 marks a leaf. cover is the number of
// training samples that reached the node, which doubles as the conditional
// weight for path-dependent SHAP.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf margin contribution (unscaled by learning rate)
    double cover = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    int cls = 0;
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    // routes x through internal nodes: left iff x[feature] < threshold
    double predict(const SparseVector& x) const;
};

struct TrainConfig {
    int n_rounds = 200;
    int max_depth = 6;
    double learning_rate = 0.1;
    int min_child_weight = 1;  // minimum training samples per child
    double lambda = 1.0;       // L2 on leaf values
    double gamma = 0.0;        // split gain threshold
    std::uint64_t rng_seed = 0;
};

struct Ensemble {
    int n_classes = 0;
    std::vector<Tree> trees;
    double learning_rate = 0.1;
    std::vector<double> base_score;
    TrainConfig train_config;
    bool degenerate_features = false;  // set when every feature was constant

    std::string to_json_string() const;
    static Ensemble from_json_string(const std::string& text);
};

// Second-order boosting on the softmax objective: one tree per class per
// round, exact greedy splits over presorted feature values, leaf value
// -G/(H+lambda), split gain 0.5*[GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l)] - gamma.
Ensemble train(const std::vector<SparseVector>& X, const std::vector<int>& y, int n_classes,
               const TrainConfig& config);

std::vector<double> predict_margins(const Ensemble& model, const SparseVector& x);
std::vector<double> predict_proba(const Ensemble& model, const SparseVector& x);
int predict_label(const Ensemble& model, const SparseVector& x);

std::vector<double> softmax(const std::vector<double>& margins);

// multiclass log-loss over a labeled set; used to watch training progress
double log_loss(const Ensemble& model, const std::vector<SparseVector>& X,
                const std::vector<int>& y);

}  // namespace emoforge
