#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emoforge/gbdt.hpp"
#include "emoforge/rng.hpp"
#include "support/checks.hpp"

using namespace emoforge;

namespace {

SparseVector dense(std::vector<double> values) {
    SparseVector v;
    v.dimension = static_cast<std::uint32_t>(values.size());
    for (std::uint32_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0.0) v.entries.emplace_back(i, values[i]);
    }
    return v;
}

TrainConfig toy_config(int rounds, int depth, double lr = 0.3) {
    TrainConfig c;
    c.n_rounds = rounds;
    c.max_depth = depth;
    c.learning_rate = lr;
    return c;
}

double train_accuracy(const Ensemble& model, const std::vector<SparseVector>& X,
                      const std::vector<int>& y) {
    int hits = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (predict_label(model, X[i]) == y[i]) ++hits;
    }
    return static_cast<double>(hits) / X.size();
}

}  // namespace

TEST_CASE("single-class training collapses to certainty") {
    std::vector<SparseVector> X;
    std::vector<int> y;
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        X.push_back(dense({rng.unit(), rng.unit()}));
        y.push_back(0);
    }
    Ensemble model = train(X, y, 1, toy_config(5, 2));
    auto proba = predict_proba(model, X[0]);
    CHECK(proba.size() == 1);
    CHECK(proba[0] == doctest::Approx(1.0));
}

TEST_CASE("linearly separable data reaches 100% training accuracy") {
    std::vector<SparseVector> X;
    std::vector<int> y;
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        double a = rng.unit() * 2.0 - 1.0;
        double b = rng.unit() * 2.0 - 1.0;
        X.push_back(dense({a, b}));
        y.push_back(a + 0.25 * b > 0.1 ? 1 : 0);
    }
    Ensemble model = train(X, y, 2, toy_config(20, 3));
    CHECK(train_accuracy(model, X, y) == doctest::Approx(1.0));
}

TEST_CASE("XOR layout is learnable at depth 2") {
    std::vector<SparseVector> X;
    std::vector<int> y;
    Rng rng(3);
    for (int i = 0; i < 240; ++i) {
        double a = rng.unit() * 2.0 - 1.0;
        double b = rng.unit() * 2.0 - 1.0;
        X.push_back(dense({a, b}));
        y.push_back(((a > 0.0) != (b > 0.0)) ? 1 : 0);
    }
    Ensemble model = train(X, y, 2, toy_config(30, 2));
    CHECK(train_accuracy(model, X, y) > 0.95);
}

TEST_CASE("predict_margins") {
    SUBCASE("zero-tree ensemble returns base_score") {
        Ensemble model;
        model.n_classes = 3;
        model.base_score = {0.5, -0.25, 0.0};
        auto margins = predict_margins(model, dense({1.0, 2.0}));
        CHECK(margins == model.base_score);
    }
    SUBCASE("zero learning rate leaves the base untouched") {
        Ensemble model;
        model.n_classes = 2;
        model.base_score = {0.1, 0.9};
        model.learning_rate = 0.0;
        Tree tree;
        tree.cls = 0;
        tree.nodes = {{0, 0.5, 1, 2, 0.0, 4.0}, {-1, 0, -1, -1, 7.0, 2.0},
                      {-1, 0, -1, -1, -7.0, 2.0}};
        model.trees.push_back(tree);
        auto margins = predict_margins(model, dense({0.0, 0.0}));
        CHECK(margins[0] == doctest::Approx(0.1));
    }
    SUBCASE("hand-built single split routes and scales by the learning rate") {
        Ensemble model;
        model.n_classes = 1;
        model.base_score = {0.25};
        model.learning_rate = 0.5;
        Tree tree;
        tree.cls = 0;
        tree.nodes = {{3, 1.5, 1, 2, 0.0, 10.0}, {-1, 0, -1, -1, 2.0, 6.0},
                      {-1, 0, -1, -1, -4.0, 4.0}};
        model.trees.push_back(tree);
        // x[3] = 1.0 < 1.5 routes left
        auto left = predict_margins(model, dense({0, 0, 0, 1.0}));
        CHECK(left[0] == doctest::Approx(0.25 + 0.5 * 2.0));
        auto right = predict_margins(model, dense({0, 0, 0, 2.0}));
        CHECK(right[0] == doctest::Approx(0.25 + 0.5 * -4.0));
    }
}

TEST_CASE("predict_proba matches an independent softmax and sums to one") {
    Rng rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        Ensemble model;
        model.n_classes = 4;
        model.base_score = {rng.unit() * 4 - 2, rng.unit() * 4 - 2, rng.unit() * 4 - 2,
                            rng.unit() * 4 - 2};
        auto proba = predict_proba(model, dense({}));

        // oracle: direct exp-normalize without the max shift
        double z = 0.0;
        for (double m : model.base_score) z += std::exp(m);
        double sum = 0.0;
        for (int c = 0; c < 4; ++c) {
            CHECK(std::abs(proba[c] - std::exp(model.base_score[c]) / z) < 1e-12);
            sum += proba[c];
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("argmax label with lowest-index tie break") {
    Ensemble model;
    model.n_classes = 4;
    model.base_score = {0.0, 0.0, 0.0, 0.0};
    CHECK(predict_label(model, dense({})) == 0);
    model.base_score = {0.0, 1.0, 1.0, 0.0};
    CHECK(predict_label(model, dense({})) == 1);
    model.base_score = {1.0, 0.0, 0.0, 0.0};
    auto proba = predict_proba(model, dense({}));
    CHECK(proba[0] > proba[1]);
}

TEST_CASE("training loss is non-increasing across rounds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed * 31 + 5);
        std::vector<SparseVector> X;
        std::vector<int> y;
        for (int i = 0; i < 60; ++i) {
            double a = rng.unit() * 2.0 - 1.0;
            double b = rng.unit() * 2.0 - 1.0;
            double c = rng.unit() * 2.0 - 1.0;
            X.push_back(dense({a, b, c}));
            y.push_back(static_cast<int>(rng.below(3)));
        }
        const int rounds = 12;
        Ensemble full = train(X, y, 3, toy_config(rounds, 3, 0.3));

        // greedy boosting means the k-round model is a prefix of the full one
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= rounds; ++k) {
            Ensemble prefix = full;
            prefix.trees.assign(full.trees.begin(), full.trees.begin() + k * 3);
            double loss = log_loss(prefix, X, y);
            CHECK(loss <= prev + 1e-9);
            prev = loss;
        }
    }
}

TEST_CASE("identical config and data give bit-identical serialized models") {
    Rng rng(6);
    std::vector<SparseVector> X;
    std::vector<int> y;
    for (int i = 0; i < 80; ++i) {
        X.push_back(dense({rng.unit(), rng.unit() > 0.6 ? rng.unit() : 0.0, rng.unit() - 0.5}));
        y.push_back(static_cast<int>(rng.below(4)));
    }
    Ensemble a = train(X, y, 4, toy_config(8, 4));
    Ensemble b = train(X, y, 4, toy_config(8, 4));
    CHECK(a.to_json_string() == b.to_json_string());
}

TEST_CASE("all-constant features yield a flagged base-only ensemble") {
    std::vector<SparseVector> X = {dense({1.0, 0.0}), dense({1.0, 0.0}), dense({1.0, 0.0}),
                                   dense({1.0, 0.0})};
    std::vector<int> y = {0, 1, 0, 1};
    Ensemble model = train(X, y, 2, toy_config(5, 3));
    CHECK(model.degenerate_features);
    CHECK(model.trees.empty());
    auto proba = predict_proba(model, X[0]);
    CHECK(proba[0] == doctest::Approx(0.5));
}

TEST_CASE("missing class is rejected") {
    std::vector<SparseVector> X = {dense({1.0}), dense({2.0}), dense({3.0})};
    std::vector<int> y = {0, 0, 2};
    CHECK_ERROR_KIND(ErrorKind::MissingClass, train(X, y, 3, toy_config(2, 2)));
    CHECK_ERROR_KIND(ErrorKind::LengthMismatch, train(X, {0, 1}, 2, toy_config(2, 2)));
}

TEST_CASE("min_child_weight bounds the smallest child") {
    Rng rng(8);
    std::vector<SparseVector> X;
    std::vector<int> y;
    for (int i = 0; i < 50; ++i) {
        double a = rng.unit() * 2.0 - 1.0;
        X.push_back(dense({a}));
        y.push_back(a > 0.0 ? 1 : 0);
    }
    TrainConfig c = toy_config(3, 4);
    c.min_child_weight = 8;
    Ensemble model = train(X, y, 2, c);
    for (const auto& tree : model.trees) {
        for (const auto& nd : tree.nodes) {
            if (!nd.is_leaf()) {
                CHECK(tree.nodes[nd.left].cover >= 8.0);
                CHECK(tree.nodes[nd.right].cover >= 8.0);
            }
        }
    }
}

TEST_CASE("ensemble json round trip predicts identically") {
    Rng rng(9);
    std::vector<SparseVector> X;
    std::vector<int> y;
    for (int i = 0; i < 90; ++i) {
        X.push_back(dense({rng.unit(), rng.unit(), rng.unit() * 3 - 1.5}));
        y.push_back(static_cast<int>(rng.below(3)));
    }
    Ensemble model = train(X, y, 3, toy_config(6, 3));
    Ensemble back = Ensemble::from_json_string(model.to_json_string());
    for (const auto& x : X) {
        auto a = predict_margins(model, x);
        auto b = predict_margins(back, x);
        for (int c = 0; c < 3; ++c) CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-15));
    }
    CHECK(back.to_json_string() == model.to_json_string());
}
