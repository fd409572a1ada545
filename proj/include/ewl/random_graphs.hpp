#pragma once

#include <random>

#include "ewl/graph.hpp"

namespace ewl {

struct RandomGraphParams {
    int min_nodes = 4;
    int max_nodes = 12;
    int min_node_labels = 2;
    int max_node_labels = 4;
    int min_edge_labels = 2;
    int max_edge_labels = 4;
};

namespace detail {

inline FeatureVec one_hot(int index, int dim) {
    FeatureVec f(dim, 0.0);
    f[index] = 1.0;
    return f;
}

}  // namespace detail

// Random attributed graph with one-hot node/edge labels from fixed-size
// alphabets. Alphabet sizes must be fixed per call so paired graphs share
// feature dimensions.
inline Graph random_attributed_graph(std::mt19937_64 &rng, int n, int node_alpha, int edge_alpha,
                                     double edge_prob) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> node_lab(0, node_alpha - 1);
    std::uniform_int_distribution<int> edge_lab(0, edge_alpha - 1);

    std::vector<FeatureVec> nf;
    nf.reserve(n);
    for (int i = 0; i < n; ++i) nf.push_back(detail::one_hot(node_lab(rng), node_alpha));

    std::vector<std::pair<int, int>> edges;
    std::vector<FeatureVec> ef;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < edge_prob) {
                edges.emplace_back(i, j);
                ef.push_back(detail::one_hot(edge_lab(rng), edge_alpha));
            }
    return Graph(n, std::move(edges), std::move(nf), std::move(ef));
}

// A pair of graphs with shared feature dimensions, drawn from a mix of
// relationships so both verdicts occur: independent draws, exact permuted
// copies, and single-edge-feature mutations.
inline std::pair<Graph, Graph> random_graph_pair(std::mt19937_64 &rng,
                                                 const RandomGraphParams &params = {}) {
    std::uniform_int_distribution<int> nodes(params.min_nodes, params.max_nodes);
    std::uniform_int_distribution<int> nalpha(params.min_node_labels, params.max_node_labels);
    std::uniform_int_distribution<int> ealpha(params.min_edge_labels, params.max_edge_labels);
    std::uniform_real_distribution<double> prob(0.25, 0.6);

    int n = nodes(rng);
    int na = nalpha(rng);
    int ea = ealpha(rng);
    double p = prob(rng);
    Graph g1 = random_attributed_graph(rng, n, na, ea, p);

    switch (rng() % 3) {
        case 0: {  // independent draw, same dims
            Graph g2 = random_attributed_graph(rng, n, na, ea, p);
            return {std::move(g1), std::move(g2)};
        }
        case 1: {  // permuted copy
            Permutation perm = Permutation::random(n, rng);
            Graph g2 = permute(g1, perm);
            return {std::move(g1), std::move(g2)};
        }
        default: {  // one edge feature mutated (falls back to a permuted copy if edgeless)
            if (g1.edge_count() == 0) {
                Permutation perm = Permutation::random(n, rng);
                Graph g2 = permute(g1, perm);
                return {std::move(g1), std::move(g2)};
            }
            std::vector<FeatureVec> ef = g1.edge_features();
            int e = static_cast<int>(rng() % ef.size());
            int lab = static_cast<int>(rng() % ea);
            ef[e] = detail::one_hot(lab, ea);
            Graph g2(n, g1.edges(), g1.node_features(), std::move(ef));
            return {std::move(g1), std::move(g2)};
        }
    }
}

// Triangle pair with identical topology and node features whose edge
// features are (x,x,x) vs (x,x,y). Degree refinement alone never separates
// them; edge-aware refinement does in one round.
inline std::pair<Graph, Graph> edge_feature_triangle_pair() {
    std::vector<FeatureVec> nf(3, FeatureVec{1.0});
    std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {0, 2}};
    FeatureVec x{1.0, 0.0}, y{0.0, 1.0};
    Graph a(3, edges, nf, {x, x, x});
    Graph b(3, edges, nf, {x, x, y});
    return {std::move(a), std::move(b)};
}

}  // namespace ewl
