#pragma once

#include <algorithm>
#include <numeric>
#include <optional>

#include "ewl/graph.hpp"

namespace ewl {

struct IsoResult {
    bool isomorphic = false;
    std::optional<Permutation> witness;
};

namespace detail {

inline std::string feature_key(const FeatureVec &f) {
    return std::string(reinterpret_cast<const char *>(f.data()), f.size() * sizeof(double));
}

// Find the edge between i and j, or -1.
inline int edge_between(const Graph &g, int i, int j) {
    for (auto [n, e] : g.neighbors(i))
        if (n == j) return e;
    return -1;
}

inline bool iso_backtrack(const Graph &g1, const Graph &g2,
                          const std::vector<int> &order, size_t pos,
                          std::vector<int> &mapping, std::vector<char> &used) {
    if (pos == order.size()) return true;
    int i = order[pos];
    for (int cand = 0; cand < g2.node_count(); ++cand) {
        if (used[cand]) continue;
        if (g1.degree(i) != g2.degree(cand)) continue;
        if (g1.node_feature(i) != g2.node_feature(cand)) continue;
        bool ok = true;
        for (size_t q = 0; q < pos && ok; ++q) {
            int u = order[q];
            int e1 = edge_between(g1, i, u);
            int e2 = edge_between(g2, cand, mapping[u]);
            if ((e1 < 0) != (e2 < 0)) ok = false;
            else if (e1 >= 0 && g1.edge_feature(e1) != g2.edge_feature(e2)) ok = false;
        }
        if (!ok) continue;
        mapping[i] = cand;
        used[cand] = 1;
        if (iso_backtrack(g1, g2, order, pos + 1, mapping, used)) return true;
        used[cand] = 0;
    }
    return false;
}

}  // namespace detail

// Exhaustive attributed isomorphism test. A witness maps g1 onto g2
// preserving adjacency, node features and edge features.
inline IsoResult brute_force_isomorphic(const Graph &g1, const Graph &g2, int size_limit = 10) {
    if (g1.node_count() > size_limit || g2.node_count() > size_limit)
        throw std::invalid_argument("brute_force_isomorphic: graph exceeds size limit of " +
                                    std::to_string(size_limit) + " nodes");
    IsoResult res;
    if (g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count()) return res;
    if (g1.node_feature_dim() != g2.node_feature_dim() ||
        g1.edge_feature_dim() != g2.edge_feature_dim())
        return res;

    // Cheap multiset invariants before searching.
    auto profile = [](const Graph &g) {
        std::vector<std::pair<int, std::string>> nodes;
        for (int i = 0; i < g.node_count(); ++i)
            nodes.emplace_back(g.degree(i), detail::feature_key(g.node_feature(i)));
        std::sort(nodes.begin(), nodes.end());
        std::vector<std::string> edges;
        for (int e = 0; e < g.edge_count(); ++e)
            edges.push_back(detail::feature_key(g.edge_feature(e)));
        std::sort(edges.begin(), edges.end());
        return std::make_pair(nodes, edges);
    };
    if (profile(g1) != profile(g2)) return res;

    // Rare degree/feature combinations first to maximize pruning.
    std::vector<int> order(g1.node_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&g1](int a, int b) {
        if (g1.degree(a) != g1.degree(b)) return g1.degree(a) > g1.degree(b);
        return a < b;
    });

    std::vector<int> mapping(g1.node_count(), -1);
    std::vector<char> used(g2.node_count(), 0);
    if (detail::iso_backtrack(g1, g2, order, 0, mapping, used)) {
        res.isomorphic = true;
        Permutation p;
        p.map = mapping;
        res.witness = p;
    }
    return res;
}

}  // namespace ewl
