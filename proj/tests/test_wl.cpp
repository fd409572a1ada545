#include <catch2/catch_amalgamated.hpp>

#include "ewl/property_suites.hpp"
#include "ewl/random_graphs.hpp"
#include "ewl/wl.hpp"

using namespace ewl;

TEST_CASE("identical graphs get equal signatures under every variant") {
    std::mt19937_64 rng(5);
    Graph g = random_attributed_graph(rng, 6, 2, 3, 0.5);
    for (auto v : {WlVariant::WL1, WlVariant::EWL, WlVariant::EWLEA}) {
        std::vector<Graph> gs{g, g};
        auto res = refine(gs, v);
        REQUIRE(res[0].signature.equals(res[1].signature));
    }
}

TEST_CASE("edge-feature triangle pair: wl1 blind, ewl and ewl-ea separate") {
    // Hand trace: all nodes have degree 2 and equal features, so every WL1
    // round keys on (c, {c, c}) and the partition never splits. Under EWL
    // the (x,x,y) triangle's nodes see tuple multisets {xx}, {xy}, {xy}
    // against {xx} everywhere in the (x,x,x) triangle, splitting at round 1.
    auto [a, b] = edge_feature_triangle_pair();
    REQUIRE_FALSE(distinguishable(a, b, WlVariant::WL1));
    REQUIRE(distinguishable(a, b, WlVariant::EWL));
    REQUIRE(distinguishable(a, b, WlVariant::EWLEA));
}

TEST_CASE("triangle vs path separated by wl1 after one round") {
    Graph tri(3, {{0, 1}, {1, 2}, {0, 2}}, {{1.0}, {1.0}, {1.0}}, {{1.0}, {1.0}, {1.0}});
    Graph path(3, {{0, 1}, {1, 2}}, {{1.0}, {1.0}, {1.0}}, {{1.0}, {1.0}});
    REQUIRE(distinguishable(tri, path, WlVariant::WL1));
}

TEST_CASE("constant edge features make ewl equivalent to wl1") {
    std::mt19937_64 rng(6);
    RandomGraphParams params;
    params.min_edge_labels = params.max_edge_labels = 1;
    for (int trial = 0; trial < 200; ++trial) {
        auto [a, b] = random_graph_pair(rng, params);
        REQUIRE(distinguishable(a, b, WlVariant::EWL) == distinguishable(a, b, WlVariant::WL1));
    }
}

TEST_CASE("signatures are permutation invariant") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = random_attributed_graph(rng, 4 + static_cast<int>(rng() % 6), 3, 3, 0.5);
        Permutation p = Permutation::random(g.node_count(), rng);
        Graph h = permute(g, p);
        for (auto v : {WlVariant::WL1, WlVariant::EWL, WlVariant::EWLEA})
            REQUIRE_FALSE(distinguishable(g, h, v));
    }
}

TEST_CASE("cross-session signatures are incomparable") {
    Graph g(2, {{0, 1}}, {{1.0}, {1.0}}, {{1.0}});
    std::vector<Graph> gs{g};
    auto a = refine(gs, WlVariant::EWL);
    auto b = refine(gs, WlVariant::EWL);
    REQUIRE_THROWS_AS(a[0].signature.equals(b[0].signature), std::logic_error);
}

TEST_CASE("refinement stabilizes within the node-count bound") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_attributed_graph(rng, 4 + static_cast<int>(rng() % 8), 2, 2, 0.4);
        std::vector<Graph> gs{g};
        auto res = refine(gs, WlVariant::EWL);
        REQUIRE(res[0].trace.iterations_to_stable <= g.node_count());
    }
}

TEST_CASE("feature dimension mismatch across graphs is rejected") {
    Graph a(2, {{0, 1}}, {{1.0}, {1.0}}, {{1.0}});
    Graph b(2, {{0, 1}}, {{1.0, 2.0}, {1.0, 2.0}}, {{1.0}});
    std::vector<Graph> gs{a, b};
    REQUIRE_THROWS_AS(refine(gs, WlVariant::WL1), std::invalid_argument);
}

TEST_CASE("feature vector at depth 0 is the initial color histogram") {
    Graph tri(3, {{0, 1}, {1, 2}, {0, 2}}, {{1.0}, {1.0}, {1.0}}, {{1.0}, {1.0}, {1.0}});
    auto f = wl_feature_vector(tri, WlVariant::EWL, 0);
    REQUIRE(f.size() == 1);
    REQUIRE(f.begin()->second == 3);
}

TEST_CASE("feature vector counts sum to node_count times depth plus one") {
    std::mt19937_64 rng(9);
    Graph g = random_attributed_graph(rng, 7, 2, 2, 0.5);
    for (int depth : {0, 1, 3}) {
        auto f = wl_feature_vector(g, WlVariant::EWL, depth);
        int total = 0;
        for (auto [c, count] : f) total += count;
        REQUIRE(total == g.node_count() * (depth + 1));
    }
}

TEST_CASE("equal graphs have equal feature vectors, unequal vectors imply distinguishable") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 40; ++trial) {
        auto [a, b] = random_graph_pair(rng);
        std::vector<Graph> gs{a, b};
        auto fs = wl_feature_vectors(gs, WlVariant::EWL, 3);
        if (fs[0] != fs[1]) REQUIRE(distinguishable(a, b, WlVariant::EWL));
    }
    Graph g = random_attributed_graph(rng, 6, 2, 2, 0.5);
    std::vector<Graph> gs{g, g};
    auto fs = wl_feature_vectors(gs, WlVariant::WL1, 2);
    REQUIRE(fs[0] == fs[1]);
}

TEST_CASE("ewl-ea agrees with ewl on random pairs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto [a, b] = random_graph_pair(rng);
        REQUIRE(distinguishable(a, b, WlVariant::EWLEA) == distinguishable(a, b, WlVariant::EWL));
    }
}

TEST_CASE("wl1 separation implies ewl separation on random pairs") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto [a, b] = random_graph_pair(rng);
        if (distinguishable(a, b, WlVariant::WL1)) REQUIRE(distinguishable(a, b, WlVariant::EWL));
    }
}

TEST_CASE("property suites pass with the real verdict") {
    REQUIRE(run_dominance_suite(200, 0).passed());
    REQUIRE(run_constant_edge_suite(200, 1).passed());
    REQUIRE(run_edge_color_equivalence_suite(200, 2).passed());
    REQUIRE(run_soundness_suite(40, 3).passed());
}

TEST_CASE("dominance suite flags an edge-blind ewl") {
    // Mutated verdict: EWL queries are answered by WL1, i.e. edge features
    // are silently dropped. The strictness witness disappears and the
    // suite must notice.
    auto blind = [](const Graph &a, const Graph &b, WlVariant v) {
        if (v == WlVariant::EWL) v = WlVariant::WL1;
        return distinguishable(a, b, v);
    };
    auto rep = run_dominance_suite(200, 0, blind);
    REQUIRE_FALSE(rep.passed());
    REQUIRE(rep.strictness_witnesses == 0);
}
