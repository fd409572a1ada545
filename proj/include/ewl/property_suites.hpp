#pragma once

#include <chrono>
#include <json.hpp>

#include "ewl/graph_json.hpp"
#include "ewl/iso.hpp"
#include "ewl/random_graphs.hpp"
#include "ewl/wl.hpp"

namespace ewl {

struct SuiteReport {
    std::string name;
    int pairs = 0;
    int violations = 0;
    int strictness_witnesses = 0;  // EWL separates, WL1 does not
    nlohmann::json violation_detail = nlohmann::json::array();
    double wall_seconds = 0.0;

    bool passed() const { return violations == 0; }

    nlohmann::json to_json(bool include_timing = true) const {
        nlohmann::json j = {{"suite", name},
                            {"pairs", pairs},
                            {"violations", violations},
                            {"strictness_witnesses", strictness_witnesses},
                            {"violation_detail", violation_detail}};
        if (include_timing) j["wall_seconds"] = wall_seconds;
        return j;
    }
};

namespace detail {

inline nlohmann::json pair_detail(const Graph &a, const Graph &b, const std::string &what) {
    return {{"what", what}, {"g1", graph_to_json(a)}, {"g2", graph_to_json(b)}};
}

}  // namespace detail

// Hook for mutation testing: lets a test swap the EWL verdict function and
// confirm the suite notices a broken variant.
using VerdictFn = bool (*)(const Graph &, const Graph &, WlVariant);

// WL1-separates implies EWL-separates, on random attributed pairs plus the
// constructed triangle pair that witnesses strictness.
inline SuiteReport run_dominance_suite(int n_pairs, uint64_t seed,
                                      VerdictFn verdict = &distinguishable) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.name = "dominance";
    std::mt19937_64 rng(seed);
    auto check = [&](const Graph &a, const Graph &b) {
        ++report.pairs;
        bool wl1 = verdict(a, b, WlVariant::WL1);
        bool ewl = verdict(a, b, WlVariant::EWL);
        if (wl1 && !ewl) {
            ++report.violations;
            if (report.violation_detail.size() < 10)
                report.violation_detail.push_back(
                    detail::pair_detail(a, b, "wl1 separates but ewl does not"));
        }
        if (ewl && !wl1) ++report.strictness_witnesses;
    };
    auto [ta, tb] = edge_feature_triangle_pair();
    check(ta, tb);
    for (int p = 1; p < n_pairs; ++p) {
        auto [a, b] = random_graph_pair(rng);
        check(a, b);
    }
    if (report.strictness_witnesses == 0) {
        ++report.violations;
        report.violation_detail.push_back({{"what", "no strictness witness found"}});
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// With constant edge features the EWL verdict must equal WL1's on every pair.
inline SuiteReport run_constant_edge_suite(int n_pairs, uint64_t seed,
                                            VerdictFn verdict = &distinguishable) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.name = "constant-edge";
    std::mt19937_64 rng(seed);
    RandomGraphParams params;
    params.min_edge_labels = params.max_edge_labels = 1;  // constant edge features
    for (int p = 0; p < n_pairs; ++p) {
        auto [a, b] = random_graph_pair(rng, params);
        ++report.pairs;
        bool wl1 = verdict(a, b, WlVariant::WL1);
        bool ewl = verdict(a, b, WlVariant::EWL);
        if (wl1 != ewl) {
            ++report.violations;
            if (report.violation_detail.size() < 10)
                report.violation_detail.push_back(
                    detail::pair_detail(a, b, "constant-edge verdicts differ"));
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// EWLEA verdict must equal EWL's on every pair.
inline SuiteReport run_edge_color_equivalence_suite(int n_pairs, uint64_t seed,
                                      VerdictFn verdict = &distinguishable) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.name = "edge-color-equivalence";
    std::mt19937_64 rng(seed);
    auto check = [&](const Graph &a, const Graph &b) {
        ++report.pairs;
        bool ewl = verdict(a, b, WlVariant::EWL);
        bool ea = verdict(a, b, WlVariant::EWLEA);
        if (ewl != ea) {
            ++report.violations;
            if (report.violation_detail.size() < 10)
                report.violation_detail.push_back(
                    detail::pair_detail(a, b, "ewl and ewl-ea verdicts differ"));
        }
    };
    auto [ta, tb] = edge_feature_triangle_pair();
    check(ta, tb);
    for (int p = 1; p < n_pairs; ++p) {
        auto [a, b] = random_graph_pair(rng);
        check(a, b);
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// Brute-force-isomorphic implies indistinguishable for every WL variant,
// over all pairs from a pool of small graphs plus explicit (g, permute(g))
// pairs.
inline SuiteReport run_soundness_suite(int pool_size, uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.name = "soundness";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nodes(2, 7);
    std::uniform_real_distribution<double> prob(0.25, 0.7);

    std::vector<Graph> pool;
    pool.reserve(pool_size);
    for (int i = 0; i < pool_size; ++i)
        pool.push_back(random_attributed_graph(rng, nodes(rng), 2, 2, prob(rng)));

    constexpr WlVariant variants[] = {WlVariant::WL1, WlVariant::EWL, WlVariant::EWLEA};
    auto check = [&](const Graph &a, const Graph &b, bool known_isomorphic) {
        ++report.pairs;
        bool iso = known_isomorphic || brute_force_isomorphic(a, b).isomorphic;
        if (!iso) return;
        for (WlVariant v : variants)
            if (distinguishable(a, b, v)) {
                ++report.violations;
                if (report.violation_detail.size() < 10)
                    report.violation_detail.push_back(detail::pair_detail(
                        a, b, std::string("isomorphic pair separated by ") + to_string(v)));
            }
    };

    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = i + 1; j < pool.size(); ++j) check(pool[i], pool[j], false);
    for (const auto &g : pool) {
        Permutation p = Permutation::random(g.node_count(), rng);
        check(g, permute(g, p), true);
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace ewl
