#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "semgp/semantics.hpp"

using namespace semgp;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng, double scale = 3.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = (rng.unit() - 0.5) * 2.0 * scale;
    return v;
}

Individual make_leaf_individual(std::uint16_t feature, const Matrix& m) {
    Individual ind;
    ind.tree.nodes = {{Op::Terminal, feature}};
    ind.semantics = evaluate(ind.tree, m);
    return ind;
}

} // namespace

TEST_CASE("semantic distance counts threshold exceedances") {
    CHECK(semantic_distance({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, 0.5) == 0);
    CHECK(semantic_distance({0, 0, 0}, {1.0, 0.2, 0}, 0.5) == 1);
    CHECK(semantic_distance({0, 0}, {10, 10}, 0.5) == 2);
}

TEST_CASE("distance boundary is strict") {
    CHECK_FALSE(semantically_different({0.0}, {0.5}, 0.5));
    CHECK(semantically_different({0.0}, {0.51}, 0.5));
    CHECK_FALSE(semantically_different({1.0, 1.0}, {1.0, 1.0}, 0.5));
}

TEST_CASE("distance errors on length mismatch") {
    CHECK_THROWS_AS(semantic_distance({1.0}, {1.0, 2.0}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(semantically_different({1.0}, {1.0, 2.0}, 0.5), std::invalid_argument);
}

TEST_CASE("distance properties: symmetry, identity, threshold monotonicity") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_vec(20, rng);
        const auto b = random_vec(20, rng);
        const double u1 = rng.unit();
        const double u2 = u1 + rng.unit();
        CHECK(semantic_distance(a, b, u1) == semantic_distance(b, a, u1));
        CHECK(semantic_distance(a, a, u1) == 0);
        CHECK(semantic_distance(a, b, u1) >= semantic_distance(a, b, u2));
    }
}

TEST_CASE("ssc on identical leaf parents exhausts trials and falls back") {
    Matrix m(4, 2);
    for (std::size_t i = 0; i < 4; ++i) m.at(i, 0) = double(i);
    const Individual p = make_leaf_individual(0, m);
    SemanticConfig cfg; // ubss 0.5, 20 trials
    TreeLimits limits;
    Evaluator ev;
    Rng rng(5);
    const SscOutcome out = ssc_crossover(p, p, m, cfg, rng, limits, ev);
    CHECK(out.trials == 20);
    CHECK_FALSE(out.accepted);
    // Swapping identical leaves cannot change semantics.
    CHECK(out.child1 == p.tree);
    CHECK(out.sem1 == p.semantics);
}

TEST_CASE("ssc accepts on the first trial when children clearly differ") {
    // Parents x0 and x1 with columns far apart: any swap flips the output
    // column, exceeding ubss on every case.
    Matrix m(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        m.at(i, 0) = 0.0;
        m.at(i, 1) = 10.0;
    }
    const Individual p1 = make_leaf_individual(0, m);
    const Individual p2 = make_leaf_individual(1, m);
    SemanticConfig cfg;
    cfg.max_trials = 1;
    TreeLimits limits;
    Evaluator ev;
    Rng rng(9);
    const SscOutcome out = ssc_crossover(p1, p2, m, cfg, rng, limits, ev);
    CHECK(out.trials == 1);
    CHECK(out.accepted);
    CHECK(semantically_different(p1.semantics, out.sem1, cfg.ubss));
    CHECK(semantically_different(p2.semantics, out.sem2, cfg.ubss));
}

TEST_CASE("ssc never exceeds the trial budget") {
    PrimitiveSet prims;
    TreeLimits limits;
    Evaluator ev;
    Rng rng(2);
    Matrix m(8, 18);
    for (auto& v : m.data) v = rng.unit();
    for (int i = 0; i < 100; ++i) {
        Individual p1, p2;
        p1.tree = grow_tree(prims, 1, 4, rng);
        p2.tree = grow_tree(prims, 1, 4, rng);
        p1.semantics = evaluate(p1.tree, m);
        p2.semantics = evaluate(p2.tree, m);
        SemanticConfig cfg;
        const SscOutcome out = ssc_crossover(p1, p2, m, cfg, rng, limits, ev);
        CHECK(out.trials >= 1);
        CHECK(out.trials <= 20);
        CHECK(within_limits(out.child1, limits));
        CHECK(within_limits(out.child2, limits));
    }
}

TEST_CASE("ssc offspring are always reachable by standard crossover") {
    // SSC only filters/retries: replaying the RNG stream with plain
    // crossover reproduces every trial, so the returned pair must equal
    // one of the replayed outcomes.
    PrimitiveSet prims;
    TreeLimits limits;
    Evaluator ev;
    Matrix m(6, 18);
    Rng data_rng(4);
    for (auto& v : m.data) v = data_rng.unit();
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng init(seed + 1000);
        Individual p1, p2;
        p1.tree = grow_tree(prims, 2, 5, init);
        p2.tree = grow_tree(prims, 2, 5, init);
        p1.semantics = evaluate(p1.tree, m);
        p2.semantics = evaluate(p2.tree, m);
        SemanticConfig cfg;
        Rng rng(seed), replay(seed);
        const SscOutcome out = ssc_crossover(p1, p2, m, cfg, rng, limits, ev);
        bool found = false;
        for (int trial = 0; trial < out.trials; ++trial) {
            const auto pair = crossover_90_10(p1.tree, p2.tree, replay, limits);
            if (trial == out.trials - 1) {
                CHECK(pair.first == out.child1);
                CHECK(pair.second == out.child2);
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("ssc with infinite ubss reduces to first-trial-then-fallback") {
    PrimitiveSet prims;
    TreeLimits limits;
    Evaluator ev;
    Matrix m(6, 18);
    Rng data_rng(8);
    for (auto& v : m.data) v = data_rng.unit();
    Rng init(55);
    Individual p1, p2;
    p1.tree = grow_tree(prims, 2, 5, init);
    p2.tree = grow_tree(prims, 2, 5, init);
    p1.semantics = evaluate(p1.tree, m);
    p2.semantics = evaluate(p2.tree, m);
    SemanticConfig cfg;
    cfg.ubss = std::numeric_limits<double>::infinity();
    Rng rng(3);
    const SscOutcome out = ssc_crossover(p1, p2, m, cfg, rng, limits, ev);
    CHECK(out.trials == cfg.max_trials); // all trials fail
    CHECK_FALSE(out.accepted);

    cfg.max_trials = 1;
    Rng single(3), replay(3);
    const SscOutcome one = ssc_crossover(p1, p2, m, cfg, single, limits, ev);
    const auto expected = crossover_90_10(p1.tree, p2.tree, replay, limits);
    CHECK(one.child1 == expected.first);
    CHECK(one.child2 == expected.second);
    // RNG streams stay aligned: one trial consumed exactly the draws of
    // one standard crossover.
    CHECK(single.next() == replay.next());
}
