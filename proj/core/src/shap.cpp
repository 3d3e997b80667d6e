#include "emoforge/shap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "emoforge/errors.hpp"

namespace emoforge {

double ShapExplanation::phi_sum(int cls) const {
    double s = 0.0;
    for (double v : phi[cls]) s += v;
    return s;
}

namespace {

std::uint32_t model_feature_count(const Ensemble& model, std::uint32_t x_dim) {
    std::uint32_t n = x_dim;
    for (const auto& tree : model.trees) {
        for (const auto& nd : tree.nodes) {
            if (!nd.is_leaf()) n = std::max(n, static_cast<std::uint32_t>(nd.feature) + 1);
        }
    }
    return n;
}

void check_covers(const Ensemble& model) {
    for (const auto& tree : model.trees) {
        for (const auto& nd : tree.nodes) {
            require(nd.cover > 0.0, ErrorKind::MissingCover,
                    "node without positive cover; path-dependent conditioning needs "
                    "training covers on every node");
        }
    }
}

// cover-weighted mean leaf value = conditional expectation with nothing known
double tree_expectation(const Tree& tree, int node_index) {
    const TreeNode& nd = tree.nodes[node_index];
    if (nd.is_leaf()) return nd.value;
    const TreeNode& l = tree.nodes[nd.left];
    const TreeNode& r = tree.nodes[nd.right];
    return (l.cover * tree_expectation(tree, nd.left) +
            r.cover * tree_expectation(tree, nd.right)) /
           nd.cover;
}

// --- path algorithm -------------------------------------------------------
//
// The path carries, for each feature split on so far, the fraction of paths
// that flow through when the feature is unknown (zero_fraction, from covers)
// or known (one_fraction, 0/1), plus the permutation weight bookkeeping.

struct PathElement {
    int feature = -1;
    double zero_fraction = 0.0;
    double one_fraction = 0.0;
    double weight = 0.0;
};

using Path = std::vector<PathElement>;

void extend(Path& path, double zero_fraction, double one_fraction, int feature) {
    const int depth = static_cast<int>(path.size());
    path.push_back({feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0});
    for (int i = depth - 1; i >= 0; --i) {
        path[i + 1].weight +=
            one_fraction * path[i].weight * (i + 1) / static_cast<double>(depth + 1);
        path[i].weight =
            zero_fraction * path[i].weight * (depth - i) / static_cast<double>(depth + 1);
    }
}

void unwind(Path& path, int index) {
    const int depth = static_cast<int>(path.size()) - 1;
    const double one_fraction = path[index].one_fraction;
    const double zero_fraction = path[index].zero_fraction;
    double next_one_portion = path[depth].weight;

    for (int i = depth - 1; i >= 0; --i) {
        if (one_fraction != 0.0) {
            const double tmp = path[i].weight;
            path[i].weight =
                next_one_portion * (depth + 1) / static_cast<double>((i + 1) * one_fraction);
            next_one_portion =
                tmp - path[i].weight * zero_fraction * (depth - i) / static_cast<double>(depth + 1);
        } else {
            path[i].weight =
                path[i].weight * (depth + 1) / (zero_fraction * static_cast<double>(depth - i));
        }
    }
    for (int i = index; i < depth; ++i) {
        path[i].feature = path[i + 1].feature;
        path[i].zero_fraction = path[i + 1].zero_fraction;
        path[i].one_fraction = path[i + 1].one_fraction;
    }
    path.pop_back();
}

double unwound_sum(const Path& path, int index) {
    const int depth = static_cast<int>(path.size()) - 1;
    const double one_fraction = path[index].one_fraction;
    const double zero_fraction = path[index].zero_fraction;
    double next_one_portion = path[depth].weight;
    double total = 0.0;

    if (one_fraction != 0.0) {
        for (int i = depth - 1; i >= 0; --i) {
            const double tmp = next_one_portion / static_cast<double>((i + 1) * one_fraction);
            total += tmp;
            next_one_portion = path[i].weight - tmp * zero_fraction * (depth - i);
        }
    } else {
        for (int i = depth - 1; i >= 0; --i) {
            total += path[i].weight / (zero_fraction * static_cast<double>(depth - i));
        }
    }
    return total * (depth + 1);
}

void recurse(const Tree& tree, const SparseVector& x, int node_index, Path path,
             double parent_zero_fraction, double parent_one_fraction, int parent_feature,
             std::vector<double>& phi) {
    extend(path, parent_zero_fraction, parent_one_fraction, parent_feature);
    const TreeNode& nd = tree.nodes[node_index];

    if (nd.is_leaf()) {
        for (int i = 1; i < static_cast<int>(path.size()); ++i) {
            const double w = unwound_sum(path, i);
            phi[path[i].feature] += w * (path[i].one_fraction - path[i].zero_fraction) * nd.value;
        }
        return;
    }

    const bool goes_left = x.at(static_cast<std::uint32_t>(nd.feature)) < nd.threshold;
    const int hot = goes_left ? nd.left : nd.right;
    const int cold = goes_left ? nd.right : nd.left;
    const double hot_zero_fraction = tree.nodes[hot].cover / nd.cover;
    const double cold_zero_fraction = tree.nodes[cold].cover / nd.cover;

    double incoming_zero = 1.0;
    double incoming_one = 1.0;
    // splitting twice on one feature collapses into a single path element
    for (int i = 1; i < static_cast<int>(path.size()); ++i) {
        if (path[i].feature == nd.feature) {
            incoming_zero = path[i].zero_fraction;
            incoming_one = path[i].one_fraction;
            unwind(path, i);
            break;
        }
    }

    recurse(tree, x, hot, path, hot_zero_fraction * incoming_zero, incoming_one, nd.feature, phi);
    recurse(tree, x, cold, path, cold_zero_fraction * incoming_zero, 0.0, nd.feature, phi);
}

}  // namespace

ShapExplanation tree_shap(const Ensemble& model, const SparseVector& x) {
    check_covers(model);
    const std::uint32_t n_features = model_feature_count(model, x.dimension);

    ShapExplanation out;
    out.phi.assign(model.n_classes, std::vector<double>(n_features, 0.0));
    out.base = model.base_score;

    std::vector<double> tree_phi(n_features, 0.0);
    for (const auto& tree : model.trees) {
        std::fill(tree_phi.begin(), tree_phi.end(), 0.0);
        recurse(tree, x, 0, Path{}, 1.0, 1.0, -1, tree_phi);
        for (std::uint32_t f = 0; f < n_features; ++f) {
            out.phi[tree.cls][f] += model.learning_rate * tree_phi[f];
        }
        out.base[tree.cls] += model.learning_rate * tree_expectation(tree, 0);
    }
    return out;
}

namespace {

void collect_tree_features(const Tree& tree, std::vector<int>& features) {
    for (const auto& nd : tree.nodes) {
        if (!nd.is_leaf()) features.push_back(nd.feature);
    }
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()), features.end());
}

// expectation of the tree conditioned on the features in `known` taking
// their values from x; everything else averaged by cover
double cond_exp(const Tree& tree, const SparseVector& x, int node_index,
                const std::vector<int>& tree_features, std::uint32_t known_mask) {
    const TreeNode& nd = tree.nodes[node_index];
    if (nd.is_leaf()) return nd.value;
    const auto pos = std::lower_bound(tree_features.begin(), tree_features.end(), nd.feature) -
                     tree_features.begin();
    if (known_mask & (1u << pos)) {
        const int child =
            x.at(static_cast<std::uint32_t>(nd.feature)) < nd.threshold ? nd.left : nd.right;
        return cond_exp(tree, x, child, tree_features, known_mask);
    }
    return (tree.nodes[nd.left].cover * cond_exp(tree, x, nd.left, tree_features, known_mask) +
            tree.nodes[nd.right].cover * cond_exp(tree, x, nd.right, tree_features, known_mask)) /
           nd.cover;
}

double binomial(int n, int k) {
    double result = 1.0;
    for (int i = 0; i < k; ++i) result = result * (n - i) / (i + 1);
    return result;
}

}  // namespace

ShapExplanation brute_force_shap(const Ensemble& model, const SparseVector& x) {
    check_covers(model);
    const std::uint32_t n_features = model_feature_count(model, x.dimension);

    std::vector<int> used;
    for (const auto& tree : model.trees) {
        std::vector<int> tf;
        collect_tree_features(tree, tf);
        used.insert(used.end(), tf.begin(), tf.end());
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    require(used.size() <= 20, ErrorKind::TooManyFeatures,
            "model uses " + std::to_string(used.size()) + " features; oracle caps at 20");

    ShapExplanation out;
    out.phi.assign(model.n_classes, std::vector<double>(n_features, 0.0));
    out.base = model.base_score;

    // Per tree, only its own features are live players; conditioning on
    // anything else never moves the expectation, so those are dummies and
    // the restricted game has identical Shapley values.
    for (const auto& tree : model.trees) {
        std::vector<int> tf;
        collect_tree_features(tree, tf);
        const int m = static_cast<int>(tf.size());
        out.base[tree.cls] += model.learning_rate * cond_exp(tree, x, 0, tf, 0);
        if (m == 0) continue;

        std::vector<double> value_of(1u << m);
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            value_of[mask] = cond_exp(tree, x, 0, tf, mask);
        }
        std::vector<double> subset_weight(m);
        for (int s = 0; s < m; ++s) {
            subset_weight[s] = 1.0 / (m * binomial(m - 1, s));
        }
        for (int i = 0; i < m; ++i) {
            const std::uint32_t bit = 1u << i;
            double phi = 0.0;
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                if (mask & bit) continue;
                const int s = std::popcount(mask);
                phi += subset_weight[s] * (value_of[mask | bit] - value_of[mask]);
            }
            out.phi[tree.cls][tf[i]] += model.learning_rate * phi;
        }
    }
    return out;
}

GlobalImportance global_importance(const Ensemble& model, const std::vector<SparseVector>& X) {
    require(!X.empty(), ErrorKind::EmptyInput, "global importance over empty explanation set");
    const std::uint32_t n_features =
        model_feature_count(model, X.empty() ? 0 : X.front().dimension);

    GlobalImportance gi;
    gi.mean_abs_phi.assign(model.n_classes, std::vector<double>(n_features, 0.0));
    gi.n_samples = X.size();
    for (const auto& x : X) {
        ShapExplanation ex = tree_shap(model, x);
        for (int c = 0; c < model.n_classes; ++c) {
            for (std::uint32_t f = 0; f < n_features; ++f) {
                gi.mean_abs_phi[c][f] += std::abs(ex.phi[c][f]);
            }
        }
    }
    for (auto& row : gi.mean_abs_phi) {
        for (auto& v : row) v /= static_cast<double>(X.size());
    }
    return gi;
}

std::string explanations_to_csv(const std::vector<std::int64_t>& sample_ids,
                                const std::vector<ShapExplanation>& explanations,
                                const std::vector<std::string>& feature_names) {
    require(sample_ids.size() == explanations.size(), ErrorKind::LengthMismatch,
            "ids/explanations size mismatch");
    std::string csv = "sample_id,class,term,phi\n";
    char buf[64];
    for (std::size_t i = 0; i < explanations.size(); ++i) {
        const auto& ex = explanations[i];
        for (std::size_t c = 0; c < ex.phi.size(); ++c) {
            for (std::size_t f = 0; f < ex.phi[c].size(); ++f) {
                if (ex.phi[c][f] == 0.0) continue;
                std::snprintf(buf, sizeof(buf), "%.9g", ex.phi[c][f]);
                csv += std::to_string(sample_ids[i]);
                csv += ',';
                csv += std::to_string(c);
                csv += ',';
                csv += f < feature_names.size() ? feature_names[f] : std::to_string(f);
                csv += ',';
                csv += buf;
                csv += '\n';
            }
        }
    }
    return csv;
}

}  // namespace emoforge
