#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ewl {

using FeatureVec = std::vector<double>;

// Bijective relabeling of node indices: map[old_index] = new_index.
struct Permutation {
    std::vector<int> map;

    static Permutation identity(int n) {
        Permutation p;
        p.map.resize(n);
        for (int i = 0; i < n; ++i) p.map[i] = i;
        return p;
    }

    static Permutation random(int n, std::mt19937_64 &rng) {
        Permutation p = identity(n);
        std::shuffle(p.map.begin(), p.map.end(), rng);
        return p;
    }

    bool valid() const {
        std::vector<char> seen(map.size(), 0);
        for (int v : map) {
            if (v < 0 || v >= static_cast<int>(map.size()) || seen[v]) return false;
            seen[v] = 1;
        }
        return true;
    }

    Permutation inverse() const {
        Permutation inv;
        inv.map.resize(map.size());
        for (size_t i = 0; i < map.size(); ++i) inv.map[map[i]] = static_cast<int>(i);
        return inv;
    }
};

// Immutable attributed undirected graph. Edges are stored once with
// endpoints in (min, max) order; the adjacency lists materialize both
// directions as (neighbor, edge index) pairs.
class Graph {
public:
    Graph(int node_count,
          std::vector<std::pair<int, int>> edges,
          std::vector<FeatureVec> node_features,
          std::vector<FeatureVec> edge_features)
        : node_count_(node_count),
          edges_(std::move(edges)),
          node_features_(std::move(node_features)),
          edge_features_(std::move(edge_features)) {
        if (node_count_ < 0) throw std::invalid_argument("graph: negative node count");
        if (static_cast<int>(node_features_.size()) != node_count_)
            throw std::invalid_argument("graph: node feature count does not match node count");
        if (edge_features_.size() != edges_.size())
            throw std::invalid_argument("graph: edge feature count does not match edge count");

        node_dim_ = node_features_.empty() ? 0 : static_cast<int>(node_features_[0].size());
        for (const auto &f : node_features_)
            if (static_cast<int>(f.size()) != node_dim_)
                throw std::invalid_argument("graph: ragged node feature dimensions");

        edge_dim_ = edge_features_.empty() ? 0 : static_cast<int>(edge_features_[0].size());
        for (const auto &f : edge_features_)
            if (static_cast<int>(f.size()) != edge_dim_)
                throw std::invalid_argument("graph: ragged edge feature dimensions");

        for (auto &e : edges_) {
            if (e.first == e.second)
                throw std::invalid_argument("graph: self-loop at node " + std::to_string(e.first));
            if (e.first < 0 || e.second < 0 || e.first >= node_count_ || e.second >= node_count_)
                throw std::invalid_argument("graph: edge endpoint out of range");
            if (e.first > e.second) std::swap(e.first, e.second);
        }
        {
            std::vector<std::pair<int, int>> sorted = edges_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw std::invalid_argument("graph: duplicate edge");
        }

        adjacency_.resize(node_count_);
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            adjacency_[edges_[e].first].emplace_back(edges_[e].second, e);
            adjacency_[edges_[e].second].emplace_back(edges_[e].first, e);
        }
    }

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int node_feature_dim() const { return node_dim_; }
    int edge_feature_dim() const { return edge_dim_; }
    const std::pair<int, int> &edge(int e) const { return edges_[e]; }
    const std::vector<std::pair<int, int>> &edges() const { return edges_; }
    const FeatureVec &node_feature(int i) const { return node_features_[i]; }
    const FeatureVec &edge_feature(int e) const { return edge_features_[e]; }
    const std::vector<FeatureVec> &node_features() const { return node_features_; }
    const std::vector<FeatureVec> &edge_features() const { return edge_features_; }
    // (neighbor index, edge index) pairs.
    const std::vector<std::pair<int, int>> &neighbors(int i) const { return adjacency_[i]; }
    int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }

private:
    int node_count_;
    int node_dim_ = 0;
    int edge_dim_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<FeatureVec> node_features_;
    std::vector<FeatureVec> edge_features_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

inline Graph build_graph(int node_count,
                         std::vector<std::pair<int, int>> edges,
                         std::vector<FeatureVec> node_features,
                         std::vector<FeatureVec> edge_features) {
    return Graph(node_count, std::move(edges), std::move(node_features), std::move(edge_features));
}

// Non-fatal diagnostics. Isolated nodes are legal here but worth flagging:
// they do occur in real datasets.
inline std::vector<std::string> validate(const Graph &g) {
    std::vector<std::string> warnings;
    for (int i = 0; i < g.node_count(); ++i)
        if (g.degree(i) == 0)
            warnings.push_back("isolated node " + std::to_string(i));
    return warnings;
}

inline Graph permute(const Graph &g, const Permutation &p) {
    if (static_cast<int>(p.map.size()) != g.node_count())
        throw std::invalid_argument("permute: permutation length does not match node count");
    if (!p.valid()) throw std::invalid_argument("permute: mapping is not a bijection");

    std::vector<FeatureVec> node_features(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) node_features[p.map[i]] = g.node_feature(i);

    std::vector<std::pair<int, int>> edges;
    std::vector<FeatureVec> edge_features;
    edges.reserve(g.edge_count());
    edge_features.reserve(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        edges.emplace_back(p.map[g.edge(e).first], p.map[g.edge(e).second]);
        edge_features.push_back(g.edge_feature(e));
    }
    return Graph(g.node_count(), std::move(edges), std::move(node_features), std::move(edge_features));
}

// One-hot degree features for graphs without node labels. The one-hot
// dimension can be forced via dim (dataset-wide max degree + 1); by default
// it is derived from this graph alone.
inline Graph assign_degree_features(const Graph &g, int dim = -1) {
    if (g.node_feature_dim() != 0)
        throw std::logic_error("assign_degree_features: graph already has node features");
    int max_deg = 0;
    for (int i = 0; i < g.node_count(); ++i) max_deg = std::max(max_deg, g.degree(i));
    if (dim < 0) dim = max_deg + 1;
    if (dim < max_deg + 1)
        throw std::invalid_argument("assign_degree_features: dimension smaller than max degree + 1");

    std::vector<FeatureVec> feats(g.node_count(), FeatureVec(dim, 0.0));
    for (int i = 0; i < g.node_count(); ++i) feats[i][g.degree(i)] = 1.0;
    return Graph(g.node_count(), g.edges(), std::move(feats), g.edge_features());
}

// Canonical byte string: node count, node features in index order, edges
// sorted by endpoints with their features. Two graphs are equal as labeled
// graphs iff their encodings match.
inline std::string canonical_encoding(const Graph &g) {
    std::string out;
    auto put_int = [&out](int64_t v) { out.append(reinterpret_cast<const char *>(&v), sizeof v); };
    auto put_vec = [&out, &put_int](const FeatureVec &f) {
        put_int(static_cast<int64_t>(f.size()));
        for (double d : f) out.append(reinterpret_cast<const char *>(&d), sizeof d);
    };
    put_int(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) put_vec(g.node_feature(i));
    std::vector<int> order(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) order[e] = e;
    std::sort(order.begin(), order.end(),
              [&g](int a, int b) { return g.edge(a) < g.edge(b); });
    for (int e : order) {
        put_int(g.edge(e).first);
        put_int(g.edge(e).second);
        put_vec(g.edge_feature(e));
    }
    return out;
}

inline bool graphs_equal(const Graph &a, const Graph &b) {
    return canonical_encoding(a) == canonical_encoding(b);
}

}  // namespace ewl
