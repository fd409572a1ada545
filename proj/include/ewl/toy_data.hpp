#pragma once

#include "ewl/random_graphs.hpp"
#include "ewl/tu_dataset.hpp"

namespace ewl {

// Dataset where the class is a pure function of edge features: every graph
// is the same 6-cycle with constant node features; class 1 graphs carry at
// least one edge of the second label. Without edge features all graphs are
// identical, so an edge-blind model cannot beat the majority rate.
inline Dataset make_edge_feature_toy_dataset(int per_class = 5, uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    const int n = 6;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    std::vector<FeatureVec> nf(n, FeatureVec{1.0});
    FeatureVec lab_a{1.0, 0.0}, lab_b{0.0, 1.0};

    Dataset ds;
    ds.name = "edge-toy";
    ds.num_classes = 2;
    ds.node_label_alphabet = {0};
    ds.edge_label_alphabet = {0, 1};
    for (int c = 0; c < 2; ++c)
        for (int r = 0; r < per_class; ++r) {
            std::vector<FeatureVec> ef(n, lab_a);
            if (c == 1) {
                int flips = 1 + static_cast<int>(rng() % 3);
                for (int f = 0; f < flips; ++f) ef[rng() % n] = lab_b;
            }
            ds.graphs.emplace_back(n, edges, nf, std::move(ef));
            ds.class_labels.push_back(c);
        }
    return ds;
}

}  // namespace ewl
