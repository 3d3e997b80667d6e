#include "emoforge/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "emoforge/errors.hpp"

namespace emoforge {

double Tree::predict(const SparseVector& x) const {
    int i = 0;
    while (!nodes[i].is_leaf()) {
        const TreeNode& nd = nodes[i];
        i = x.at(static_cast<std::uint32_t>(nd.feature)) < nd.threshold ? nd.left : nd.right;
    }
    return nodes[i].value;
}

namespace {

constexpr double kMinHessian = 1e-16;

struct Column {
    // stored entries sorted by (value, row); rows absent here hold exact zero
    std::vector<std::pair<double, int>> entries;
};

std::vector<Column> build_columns(const std::vector<SparseVector>& X, std::uint32_t n_features) {
    std::vector<Column> cols(n_features);
    for (int row = 0; row < static_cast<int>(X.size()); ++row) {
        for (const auto& [idx, v] : X[row].entries) {
            cols[idx].entries.emplace_back(v, row);
        }
    }
    for (auto& col : cols) {
        std::sort(col.entries.begin(), col.entries.end());
    }
    return cols;
}

bool all_features_constant(const std::vector<Column>& cols, std::size_t n_rows) {
    for (const auto& col : cols) {
        if (col.entries.empty()) continue;
        double first = col.entries.front().first;
        double last = col.entries.back().first;
        if (first != last) return false;
        if (col.entries.size() < n_rows && first != 0.0) return false;
    }
    return true;
}

struct SplitCandidate {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
    bool found = false;
};

struct BuilderNode {
    std::vector<int> rows;
    double sum_g = 0.0;
    double sum_h = 0.0;
    int tree_index = 0;
    SplitCandidate best;
};

// streaming split scan state for one (node, feature) pair
struct ScanState {
    double nz_g = 0.0, nz_h = 0.0;
    int nz_cnt = 0;
    double left_g = 0.0, left_h = 0.0;
    int left_cnt = 0;
    double last_v = 0.0;
    bool any_left = false;
    bool zero_done = false;
    double zero_g = 0.0, zero_h = 0.0;
    int zero_cnt = 0;
};

class TreeBuilder {
public:
    TreeBuilder(const std::vector<SparseVector>& X, const std::vector<Column>& cols,
                const TrainConfig& cfg)
        : X_(X), cols_(cols), cfg_(cfg), node_slot_(X.size(), -1) {}

    // builds one tree on (g, h); on return leaf_of_row names the leaf each
    // training row landed in
    Tree build(const std::vector<double>& g, const std::vector<double>& h,
               std::vector<int>& leaf_of_row) {
        Tree tree;
        const int n = static_cast<int>(X_.size());
        leaf_of_row.assign(n, 0);

        BuilderNode root;
        root.rows.resize(n);
        for (int i = 0; i < n; ++i) root.rows[i] = i;
        for (int i = 0; i < n; ++i) {
            root.sum_g += g[i];
            root.sum_h += h[i];
        }
        root.tree_index = 0;
        tree.nodes.push_back(make_leaf(root));

        std::vector<BuilderNode> level;
        level.push_back(std::move(root));

        for (int depth = 0; depth < cfg_.max_depth && !level.empty(); ++depth) {
            find_best_splits(level, g, h);

            std::vector<BuilderNode> next;
            for (auto& node : level) {
                if (!node.best.found) {
                    finalize_leaf(node, leaf_of_row);
                    continue;
                }
                auto [left, right] = partition(node, g, h);
                left.tree_index = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(make_leaf(left));
                right.tree_index = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(make_leaf(right));
                TreeNode& tn = tree.nodes[node.tree_index];  // after any reallocation
                tn.feature = node.best.feature;
                tn.threshold = node.best.threshold;
                tn.value = 0.0;
                tn.left = left.tree_index;
                tn.right = right.tree_index;
                next.push_back(std::move(left));
                next.push_back(std::move(right));
            }
            level = std::move(next);
        }
        for (auto& node : level) finalize_leaf(node, leaf_of_row);
        return tree;
    }

private:
    TreeNode make_leaf(const BuilderNode& node) const {
        TreeNode tn;
        tn.feature = -1;
        tn.value = -node.sum_g / (node.sum_h + cfg_.lambda);
        tn.cover = static_cast<double>(node.rows.size());
        return tn;
    }

    void finalize_leaf(const BuilderNode& node, std::vector<int>& leaf_of_row) {
        for (int row : node.rows) leaf_of_row[row] = node.tree_index;
    }

    double gain_term(double gs, double hs) const { return gs * gs / (hs + cfg_.lambda); }

    void consider(BuilderNode& node, ScanState& st, int feature, double threshold) const {
        const int right_cnt = static_cast<int>(node.rows.size()) - st.left_cnt;
        if (st.left_cnt < cfg_.min_child_weight || right_cnt < cfg_.min_child_weight) return;
        double gain = 0.5 * (gain_term(st.left_g, st.left_h) +
                             gain_term(node.sum_g - st.left_g, node.sum_h - st.left_h) -
                             gain_term(node.sum_g, node.sum_h)) -
                      cfg_.gamma;
        if (gain > 0.0 && gain > node.best.gain) {
            node.best = {gain, feature, threshold, true};
        }
    }

    void inject_zero_block(BuilderNode& node, ScanState& st, int feature) const {
        if (st.zero_done) return;
        st.zero_done = true;
        if (st.zero_cnt == 0) return;
        if (st.any_left && st.last_v < 0.0) {
            consider(node, st, feature, st.last_v / 2.0);
        }
        st.left_g += st.zero_g;
        st.left_h += st.zero_h;
        st.left_cnt += st.zero_cnt;
        st.last_v = 0.0;
        st.any_left = true;
    }

    void find_best_splits(std::vector<BuilderNode>& level, const std::vector<double>& g,
                          const std::vector<double>& h) {
        const int n_nodes = static_cast<int>(level.size());
        for (int s = 0; s < n_nodes; ++s) {
            level[s].best = SplitCandidate{};
            for (int row : level[s].rows) node_slot_[row] = s;
        }
        std::vector<ScanState> states(n_nodes);

        for (int f = 0; f < static_cast<int>(cols_.size()); ++f) {
            const auto& entries = cols_[f].entries;
            if (entries.empty()) continue;

            for (auto& st : states) st = ScanState{};
            // pass 1: aggregate stored nonzero-valued entries per node, so the
            // implicit-zero block is known before the ordered scan
            for (const auto& [v, row] : entries) {
                int s = node_slot_[row];
                if (s < 0 || v == 0.0) continue;
                states[s].nz_g += g[row];
                states[s].nz_h += h[row];
                ++states[s].nz_cnt;
            }
            bool any = false;
            for (int s = 0; s < n_nodes; ++s) {
                ScanState& st = states[s];
                st.zero_g = level[s].sum_g - st.nz_g;
                st.zero_h = level[s].sum_h - st.nz_h;
                st.zero_cnt = static_cast<int>(level[s].rows.size()) - st.nz_cnt;
                if (st.nz_cnt > 0) any = true;
            }
            if (!any) continue;  // feature is all-zero in every active node

            // pass 2: ordered scan with the zero block spliced in at 0.0
            for (const auto& [v, row] : entries) {
                int s = node_slot_[row];
                if (s < 0 || v == 0.0) continue;
                ScanState& st = states[s];
                BuilderNode& node = level[s];
                if (v > 0.0) inject_zero_block(node, st, f);
                if (st.any_left && v > st.last_v) {
                    consider(node, st, f, (st.last_v + v) / 2.0);
                }
                st.left_g += g[row];
                st.left_h += h[row];
                ++st.left_cnt;
                st.last_v = v;
                st.any_left = true;
            }
            for (int s = 0; s < n_nodes; ++s) {
                inject_zero_block(level[s], states[s], f);
            }
        }
        for (auto& node : level) {
            for (int row : node.rows) node_slot_[row] = -1;
        }
    }

    std::pair<BuilderNode, BuilderNode> partition(const BuilderNode& node,
                                                  const std::vector<double>& g,
                                                  const std::vector<double>& h) const {
        BuilderNode left, right;
        const auto f = static_cast<std::uint32_t>(node.best.feature);
        for (int row : node.rows) {
            BuilderNode& side = X_[row].at(f) < node.best.threshold ? left : right;
            side.rows.push_back(row);
            side.sum_g += g[row];
            side.sum_h += h[row];
        }
        return {std::move(left), std::move(right)};
    }

    const std::vector<SparseVector>& X_;
    const std::vector<Column>& cols_;
    const TrainConfig& cfg_;
    std::vector<int> node_slot_;
};

void softmax_into(const double* margins, int n_classes, double* out) {
    double m = margins[0];
    for (int c = 1; c < n_classes; ++c) m = std::max(m, margins[c]);
    double sum = 0.0;
    for (int c = 0; c < n_classes; ++c) {
        out[c] = std::exp(margins[c] - m);
        sum += out[c];
    }
    for (int c = 0; c < n_classes; ++c) out[c] /= sum;
}

}  // namespace

Ensemble train(const std::vector<SparseVector>& X, const std::vector<int>& y, int n_classes,
               const TrainConfig& config) {
    require(X.size() == y.size(), ErrorKind::LengthMismatch, "X/y size mismatch");
    require(static_cast<int>(X.size()) >= n_classes, ErrorKind::EmptyInput,
            "fewer samples than classes");
    std::vector<int> class_count(n_classes, 0);
    for (int label : y) {
        require(label >= 0 && label < n_classes, ErrorKind::InvalidLabel,
                "label " + std::to_string(label) + " out of range");
        ++class_count[label];
    }
    for (int c = 0; c < n_classes; ++c) {
        require(class_count[c] > 0, ErrorKind::MissingClass,
                "class " + std::to_string(c) + " absent from training data");
    }

    Ensemble model;
    model.n_classes = n_classes;
    model.learning_rate = config.learning_rate;
    model.base_score.assign(n_classes, 0.0);
    model.train_config = config;

    const std::uint32_t n_features = X.empty() ? 0 : X.front().dimension;
    auto cols = build_columns(X, n_features);
    if (all_features_constant(cols, X.size())) {
        model.degenerate_features = true;
        return model;
    }

    const int n = static_cast<int>(X.size());
    std::vector<double> margins(static_cast<std::size_t>(n) * n_classes, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < n_classes; ++c) margins[i * n_classes + c] = model.base_score[c];
    }

    std::vector<double> proba(static_cast<std::size_t>(n) * n_classes, 0.0);
    std::vector<double> g(n), h(n);
    std::vector<int> leaf_of_row;
    TreeBuilder builder(X, cols, config);

    for (int round = 0; round < config.n_rounds; ++round) {
        for (int i = 0; i < n; ++i) {
            softmax_into(&margins[i * n_classes], n_classes, &proba[i * n_classes]);
        }
        for (int c = 0; c < n_classes; ++c) {
            for (int i = 0; i < n; ++i) {
                double p = proba[i * n_classes + c];
                g[i] = p - (y[i] == c ? 1.0 : 0.0);
                h[i] = std::max(p * (1.0 - p), kMinHessian);
            }
            Tree tree = builder.build(g, h, leaf_of_row);
            tree.cls = c;
            for (int i = 0; i < n; ++i) {
                margins[i * n_classes + c] +=
                    config.learning_rate * tree.nodes[leaf_of_row[i]].value;
            }
            model.trees.push_back(std::move(tree));
        }
    }
    return model;
}

std::vector<double> predict_margins(const Ensemble& model, const SparseVector& x) {
    std::vector<double> margins = model.base_score;
    for (const auto& tree : model.trees) {
        margins[tree.cls] += model.learning_rate * tree.predict(x);
    }
    return margins;
}

std::vector<double> softmax(const std::vector<double>& margins) {
    std::vector<double> out(margins.size());
    softmax_into(margins.data(), static_cast<int>(margins.size()), out.data());
    return out;
}

std::vector<double> predict_proba(const Ensemble& model, const SparseVector& x) {
    return softmax(predict_margins(model, x));
}

int predict_label(const Ensemble& model, const SparseVector& x) {
    auto margins = predict_margins(model, x);
    int best = 0;
    for (int c = 1; c < model.n_classes; ++c) {
        if (margins[c] > margins[best]) best = c;
    }
    return best;
}

double log_loss(const Ensemble& model, const std::vector<SparseVector>& X,
                const std::vector<int>& y) {
    require(X.size() == y.size(), ErrorKind::LengthMismatch, "X/y size mismatch");
    require(!X.empty(), ErrorKind::EmptyInput, "log_loss on empty set");
    double total = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        auto p = predict_proba(model, X[i]);
        total -= std::log(std::max(p[y[i]], 1e-15));
    }
    return total / static_cast<double>(X.size());
}

namespace {

nlohmann::json node_to_json(const TreeNode& nd) {
    nlohmann::json j;
    if (nd.is_leaf()) {
        j["leaf"] = nd.value;
    } else {
        j["feature"] = nd.feature;
        j["threshold"] = nd.threshold;
        j["left"] = nd.left;
        j["right"] = nd.right;
    }
    j["cover"] = nd.cover;
    return j;
}

TreeNode node_from_json(const nlohmann::json& j) {
    TreeNode nd;
    if (j.contains("leaf")) {
        nd.value = j.at("leaf").get<double>();
    } else {
        nd.feature = j.at("feature").get<int>();
        nd.threshold = j.at("threshold").get<double>();
        nd.left = j.at("left").get<int>();
        nd.right = j.at("right").get<int>();
    }
    nd.cover = j.at("cover").get<double>();
    return nd;
}

}  // namespace

std::string Ensemble::to_json_string() const {
    nlohmann::json j;
    j["n_classes"] = n_classes;
    j["learning_rate"] = learning_rate;
    j["base_score"] = base_score;
    j["degenerate_features"] = degenerate_features;
    j["config"] = {{"n_rounds", train_config.n_rounds},
                   {"max_depth", train_config.max_depth},
                   {"learning_rate", train_config.learning_rate},
                   {"min_child_weight", train_config.min_child_weight},
                   {"lambda", train_config.lambda},
                   {"gamma", train_config.gamma},
                   {"rng_seed", train_config.rng_seed}};
    j["trees"] = nlohmann::json::array();
    for (const auto& tree : trees) {
        nlohmann::json jt;
        jt["class"] = tree.cls;
        jt["nodes"] = nlohmann::json::array();
        for (const auto& nd : tree.nodes) jt["nodes"].push_back(node_to_json(nd));
        j["trees"].push_back(std::move(jt));
    }
    return j.dump(2);
}

Ensemble Ensemble::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Ensemble model;
    model.n_classes = j.at("n_classes").get<int>();
    model.learning_rate = j.at("learning_rate").get<double>();
    model.base_score = j.at("base_score").get<std::vector<double>>();
    model.degenerate_features = j.value("degenerate_features", false);
    const auto& jc = j.at("config");
    model.train_config.n_rounds = jc.at("n_rounds").get<int>();
    model.train_config.max_depth = jc.at("max_depth").get<int>();
    model.train_config.learning_rate = jc.at("learning_rate").get<double>();
    model.train_config.min_child_weight = jc.at("min_child_weight").get<int>();
    model.train_config.lambda = jc.at("lambda").get<double>();
    model.train_config.gamma = jc.at("gamma").get<double>();
    model.train_config.rng_seed = jc.at("rng_seed").get<std::uint64_t>();
    for (const auto& jt : j.at("trees")) {
        Tree tree;
        tree.cls = jt.at("class").get<int>();
        for (const auto& jn : jt.at("nodes")) tree.nodes.push_back(node_from_json(jn));
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace emoforge
