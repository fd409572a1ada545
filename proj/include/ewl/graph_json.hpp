#pragma once

#include <json.hpp>

#include "ewl/graph.hpp"
#include "ewl/wl.hpp"

namespace ewl {

// Interchange format:
//   { "node_features": [[...], ...],   // one row per node (rows may be empty)
//     "edges": [[i, j], ...],          // 0-based endpoints
//     "edge_features": [[...], ...] }  // one row per edge
inline nlohmann::json graph_to_json(const Graph &g) {
    nlohmann::json j;
    j["node_features"] = g.node_features();
    auto &edges = j["edges"] = nlohmann::json::array();
    for (const auto &[a, b] : g.edges()) edges.push_back({a, b});
    j["edge_features"] = g.edge_features();
    return j;
}

inline Graph graph_from_json(const nlohmann::json &j) {
    if (!j.contains("node_features") || !j.contains("edges") || !j.contains("edge_features"))
        throw std::runtime_error("graph json: need node_features, edges, edge_features");
    auto nf = j.at("node_features").get<std::vector<FeatureVec>>();
    auto ef = j.at("edge_features").get<std::vector<FeatureVec>>();
    std::vector<std::pair<int, int>> edges;
    for (const auto &e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::runtime_error("graph json: edge must be [i, j]");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    const int n = static_cast<int>(nf.size());
    return Graph(n, std::move(edges), std::move(nf), std::move(ef));
}

inline nlohmann::json signature_to_json(const GraphSignature &sig) {
    nlohmann::json counts = nlohmann::json::array();
    for (auto [color, count] : sig.color_counts) counts.push_back({color, count});
    return {{"session", sig.session}, {"color_counts", counts}};
}

// Per-iteration color histograms; colors are session-local dense ids.
inline nlohmann::json trace_to_json(const RefinementTrace &trace) {
    nlohmann::json iters = nlohmann::json::array();
    for (const auto &colors : trace.node_colors) {
        std::map<int, int> h;
        for (int c : colors) ++h[c];
        nlohmann::json hist = nlohmann::json::array();
        for (auto [color, count] : h) hist.push_back({color, count});
        iters.push_back(hist);
    }
    return {{"iterations_to_stable", trace.iterations_to_stable}, {"color_histograms", iters}};
}

}  // namespace ewl
