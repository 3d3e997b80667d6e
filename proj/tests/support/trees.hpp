#pragma once

// Hand-constructed random tree ensembles with consistent covers, used to
// exercise the attribution code independently of the trainer.

#include <vector>

#include "emoforge/gbdt.hpp"
#include "emoforge/rng.hpp"

namespace emoforge::testsupport {

// grows a random subtree; returns node index, fills covers bottom-up
inline int grow_node(Tree& tree, Rng& rng, int depth, int max_depth, int n_features) {
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const bool leaf = depth >= max_depth || rng.below(4) == 0;
    if (leaf) {
        tree.nodes[index].feature = -1;
        tree.nodes[index].value = rng.unit() * 4.0 - 2.0;
        tree.nodes[index].cover = 1.0 + static_cast<double>(rng.below(20));
        return index;
    }
    tree.nodes[index].feature = static_cast<int>(rng.below(n_features));
    tree.nodes[index].threshold = rng.unit() * 2.0 - 1.0;
    const int left = grow_node(tree, rng, depth + 1, max_depth, n_features);
    const int right = grow_node(tree, rng, depth + 1, max_depth, n_features);
    tree.nodes[index].left = left;
    tree.nodes[index].right = right;
    tree.nodes[index].cover = tree.nodes[left].cover + tree.nodes[right].cover;
    return index;
}

inline Ensemble random_small_ensemble(Rng& rng, int max_trees, int n_features, int max_depth,
                                      int n_classes = 2) {
    Ensemble model;
    model.n_classes = n_classes;
    model.learning_rate = 0.25 + rng.unit() * 0.5;
    model.base_score.assign(n_classes, 0.0);
    for (int c = 0; c < n_classes; ++c) model.base_score[c] = rng.unit() - 0.5;
    const int n_trees = 1 + static_cast<int>(rng.below(max_trees));
    for (int t = 0; t < n_trees; ++t) {
        Tree tree;
        tree.cls = static_cast<int>(rng.below(n_classes));
        grow_node(tree, rng, 0, max_depth, n_features);
        model.trees.push_back(std::move(tree));
    }
    return model;
}

inline SparseVector random_point(Rng& rng, int n_features) {
    SparseVector x;
    x.dimension = n_features;
    for (int f = 0; f < n_features; ++f) {
        if (rng.below(4) == 0) continue;  // leave some features at implicit zero
        x.entries.emplace_back(static_cast<std::uint32_t>(f), rng.unit() * 2.0 - 1.0);
    }
    return x;
}

}  // namespace emoforge::testsupport
