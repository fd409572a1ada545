#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ewl/graph.hpp"

namespace ewl {

enum class WlVariant { WL1, EWL, EWLEA };

inline const char *to_string(WlVariant v) {
    switch (v) {
        case WlVariant::WL1: return "wl1";
        case WlVariant::EWL: return "ewl";
        case WlVariant::EWLEA: return "ewl-ea";
    }
    return "?";
}

// Injective mapping from canonical key bytes to dense color ids, assigned
// in first-seen order. One dictionary per refinement session.
class ColorDictionary {
public:
    int intern(const std::string &key) {
        auto [it, inserted] = table_.try_emplace(key, next_);
        if (inserted) ++next_;
        return it->second;
    }
    int size() const { return next_; }

private:
    std::unordered_map<std::string, int> table_;
    int next_ = 0;
};

struct RefinementTrace {
    // node_colors[l][i] = color of node i after iteration l (l = 0 is initial).
    std::vector<std::vector<int>> node_colors;
    // edge_colors[l][e], EWLEA only.
    std::vector<std::vector<int>> edge_colors;
    int iterations_to_stable = 0;
};

// Sorted run-length multiset of stable node colors. Signatures are only
// comparable within the refinement session that produced them.
struct GraphSignature {
    uint64_t session = 0;
    std::vector<std::pair<int, int>> color_counts;  // (color id, count), sorted

    bool equals(const GraphSignature &other) const {
        if (session != other.session)
            throw std::logic_error("GraphSignature: comparing signatures from different sessions");
        return color_counts == other.color_counts;
    }
};

struct RefinementResult {
    RefinementTrace trace;
    GraphSignature signature;
};

namespace detail {

inline void put_uvarint(std::string &out, uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

inline std::string feature_bytes(const FeatureVec &f) {
    std::string s;
    put_uvarint(s, f.size());
    s.append(reinterpret_cast<const char *>(f.data()), f.size() * sizeof(double));
    return s;
}

inline uint64_t next_session_id() {
    static std::atomic<uint64_t> counter{1};
    return counter.fetch_add(1);
}

inline std::vector<std::pair<int, int>> color_histogram(const std::vector<int> &colors) {
    std::map<int, int> h;
    for (int c : colors) ++h[c];
    return {h.begin(), h.end()};
}

}  // namespace detail

// Joint color refinement of a graph list under one shared dictionary, so the
// resulting signatures are cross-comparable. Initial node colors come from
// the byte encoding of node features. Iteration keys:
//   WL1:    (prev color, sorted multiset of neighbor colors)
//   EWL:    (prev color, sorted multiset of (neighbor color, edge key) tuples)
//   EWLEA:  as EWL but with refined edge colors in the tuples; edge colors
//           are rehashed from (prev edge color, unordered endpoint colors)
//           after each node round.
// Stops when the joint node partition stops refining, or after a total-node
// iteration bound. max_iterations >= 0 forces an exact iteration count
// (used for fixed-depth feature vectors).
inline std::vector<RefinementResult> refine(std::span<const Graph> graphs, WlVariant variant,
                                            int max_iterations = -1) {
    size_t total_nodes = 0;
    int node_dim = -1, edge_dim = -1;  // edgeless/empty graphs carry no dim information
    for (const auto &g : graphs) {
        if (g.node_count() > 0) {
            if (node_dim < 0) node_dim = g.node_feature_dim();
            else if (g.node_feature_dim() != node_dim)
                throw std::invalid_argument("refine: node feature dimensions differ across graphs");
        }
        if (g.edge_count() > 0) {
            if (edge_dim < 0) edge_dim = g.edge_feature_dim();
            else if (g.edge_feature_dim() != edge_dim)
                throw std::invalid_argument("refine: edge feature dimensions differ across graphs");
        }
        total_nodes += static_cast<size_t>(g.node_count());
    }

    ColorDictionary dict;
    const size_t n_graphs = graphs.size();
    std::vector<RefinementResult> results(n_graphs);

    // Initial colors.
    std::vector<std::vector<int>> colors(n_graphs);
    std::vector<std::vector<int>> edge_colors(n_graphs);
    for (size_t gi = 0; gi < n_graphs; ++gi) {
        const Graph &g = graphs[gi];
        colors[gi].resize(g.node_count());
        for (int i = 0; i < g.node_count(); ++i)
            colors[gi][i] = dict.intern("I" + detail::feature_bytes(g.node_feature(i)));
        edge_colors[gi].resize(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e)
            edge_colors[gi][e] = dict.intern("J" + detail::feature_bytes(g.edge_feature(e)));
        results[gi].trace.node_colors.push_back(colors[gi]);
        if (variant == WlVariant::EWLEA) results[gi].trace.edge_colors.push_back(edge_colors[gi]);
    }

    auto distinct_count = [&]() {
        std::map<int, int> seen;
        for (const auto &c : colors)
            for (int v : c) seen[v] = 1;
        return static_cast<int>(seen.size());
    };
    auto graph_distinct = [&](size_t gi) {
        std::map<int, int> seen;
        for (int v : colors[gi]) seen[v] = 1;
        return static_cast<int>(seen.size());
    };

    int prev_distinct = distinct_count();
    std::vector<int> prev_graph_distinct(n_graphs);
    std::vector<char> graph_stable(n_graphs, 0);
    for (size_t gi = 0; gi < n_graphs; ++gi) prev_graph_distinct[gi] = graph_distinct(gi);

    const int bound = max_iterations >= 0 ? max_iterations
                                          : static_cast<int>(total_nodes);
    for (int l = 1; l <= bound; ++l) {
        for (size_t gi = 0; gi < n_graphs; ++gi) {
            const Graph &g = graphs[gi];
            std::vector<int> next(g.node_count());
            for (int i = 0; i < g.node_count(); ++i) {
                std::vector<std::string> elems;
                elems.reserve(g.neighbors(i).size());
                for (auto [j, e] : g.neighbors(i)) {
                    std::string el;
                    detail::put_uvarint(el, static_cast<uint64_t>(colors[gi][j]));
                    if (variant == WlVariant::EWL)
                        el += "J" + detail::feature_bytes(g.edge_feature(e));
                    else if (variant == WlVariant::EWLEA)
                        detail::put_uvarint(el, static_cast<uint64_t>(edge_colors[gi][e]));
                    elems.push_back(std::move(el));
                }
                std::sort(elems.begin(), elems.end());
                std::string key = "N";
                detail::put_uvarint(key, static_cast<uint64_t>(colors[gi][i]));
                for (const auto &el : elems) {
                    detail::put_uvarint(key, el.size());
                    key += el;
                }
                next[i] = dict.intern(key);
            }
            colors[gi] = std::move(next);
            if (variant == WlVariant::EWLEA) {
                for (int e = 0; e < g.edge_count(); ++e) {
                    auto [a, b] = g.edge(e);
                    int ca = colors[gi][a], cb = colors[gi][b];
                    if (ca > cb) std::swap(ca, cb);  // undirected: unordered pair
                    std::string key = "E";
                    detail::put_uvarint(key, static_cast<uint64_t>(edge_colors[gi][e]));
                    detail::put_uvarint(key, static_cast<uint64_t>(ca));
                    detail::put_uvarint(key, static_cast<uint64_t>(cb));
                    edge_colors[gi][e] = dict.intern(key);
                }
            }
            results[gi].trace.node_colors.push_back(colors[gi]);
            if (variant == WlVariant::EWLEA) results[gi].trace.edge_colors.push_back(edge_colors[gi]);
        }

        for (size_t gi = 0; gi < n_graphs; ++gi) {
            int d = graph_distinct(gi);
            assert(d >= prev_graph_distinct[gi]);
            if (!graph_stable[gi]) {
                if (d == prev_graph_distinct[gi]) {
                    graph_stable[gi] = 1;
                    results[gi].trace.iterations_to_stable = l;
                }
                prev_graph_distinct[gi] = d;
            }
        }

        int d = distinct_count();
        assert(d >= prev_distinct);  // injective HASH only splits classes
        if (max_iterations < 0 && d == prev_distinct) break;
        prev_distinct = d;
    }

    uint64_t session = detail::next_session_id();
    for (size_t gi = 0; gi < n_graphs; ++gi) {
        if (!graph_stable[gi])
            results[gi].trace.iterations_to_stable =
                static_cast<int>(results[gi].trace.node_colors.size()) - 1;
        results[gi].signature.session = session;
        results[gi].signature.color_counts = detail::color_histogram(colors[gi]);
    }
    return results;
}

inline std::vector<RefinementResult> refine(const std::vector<Graph> &graphs, WlVariant variant,
                                            int max_iterations = -1) {
    return refine(std::span<const Graph>(graphs.data(), graphs.size()), variant, max_iterations);
}

// True iff joint refinement separates the two graphs' stable signatures.
inline bool distinguishable(const Graph &g1, const Graph &g2, WlVariant variant) {
    const Graph gs[2] = {g1, g2};
    auto res = refine(std::span<const Graph>(gs, 2), variant);
    return !res[0].signature.equals(res[1].signature);
}

// Concatenated color-count histograms for iterations 0..depth over a shared
// dictionary. Color ids are globally unique across iterations, so a flat
// sparse map indexed by color id is a valid concatenation.
inline std::vector<std::map<int, int>> wl_feature_vectors(std::span<const Graph> graphs,
                                                          WlVariant variant, int depth) {
    if (depth < 0) throw std::invalid_argument("wl_feature_vectors: negative depth");
    auto res = refine(graphs, variant, depth);
    std::vector<std::map<int, int>> out(graphs.size());
    for (size_t gi = 0; gi < graphs.size(); ++gi)
        for (int l = 0; l <= depth; ++l)
            for (int c : res[gi].trace.node_colors[l]) ++out[gi][c];
    return out;
}

inline std::map<int, int> wl_feature_vector(const Graph &g, WlVariant variant, int depth) {
    return wl_feature_vectors(std::span<const Graph>(&g, 1), variant, depth)[0];
}

}  // namespace ewl
