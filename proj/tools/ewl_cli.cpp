// Command-line front end: dataset ingestion and statistics, WL refinement,
// isomorphism testing, randomized property suites, WL-feature baselines,
// cross-validated model training and gradient checking.
//
// Exit codes: 0 success, 1 property violation, 2 usage error, 3 I/O or
// parse error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ewl/cv.hpp"
#include "ewl/egin_io.hpp"
#include "ewl/graph_json.hpp"
#include "ewl/iso.hpp"
#include "ewl/property_suites.hpp"
#include "ewl/toy_data.hpp"
#include "ewl/tu_dataset.hpp"
#include "ewl/tu_fetch.hpp"
#include "ewl/wl.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitIo = 3;

ewl::Graph load_graph_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return ewl::graph_from_json(j);
}

ewl::WlVariant wl_variant_from_string(const std::string &s) {
    if (s == "wl1") return ewl::WlVariant::WL1;
    if (s == "ewl") return ewl::WlVariant::EWL;
    if (s == "ewl-ea") return ewl::WlVariant::EWLEA;
    throw CLI::ValidationError("variant must be one of wl1, ewl, ewl-ea");
}

void emit(const json &j, const std::string &output) {
    if (output.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(output);
        out << j.dump(2) << "\n";
    }
}

ewl::Dataset load_dataset(const std::string &name, const std::string &dir) {
    fs::path d = dir.empty() ? ewl::default_cache_dir() / name : fs::path(dir);
    return ewl::parse_tu_dataset(d, name);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Edged Weisfeiler-Lehman toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON");
    std::string output;
    app.add_option("-o,--output", output, "write report to file instead of stdout");

    // fetch
    auto *fetch = app.add_subcommand("fetch", "download a TU dataset into the local cache");
    std::string fetch_name, cache_dir;
    fetch->add_option("--dataset", fetch_name, "dataset name, e.g. MUTAG")->required();
    fetch->add_option("--cache", cache_dir, "cache directory (default EWL_CACHE_DIR or ~/.cache/ewl)");

    // stats
    auto *stats = app.add_subcommand("stats", "dataset statistics");
    std::string stats_name, stats_dir;
    stats->add_option("--dataset", stats_name, "dataset name")->required();
    stats->add_option("--dir", stats_dir, "explicit dataset directory (default: cache)");

    // refine
    auto *refine_cmd = app.add_subcommand("refine", "run color refinement on a graph");
    std::string refine_input, refine_variant = "ewl";
    refine_cmd->add_option("--input", refine_input, "graph JSON file")->required();
    refine_cmd->add_option("--variant", refine_variant, "wl1 | ewl | ewl-ea");

    // isotest
    auto *isotest = app.add_subcommand("isotest", "compare two graphs under all WL variants");
    std::string iso_a, iso_b;
    int oracle_limit = 10;
    isotest->add_option("graph_a", iso_a, "first graph JSON file")->required();
    isotest->add_option("graph_b", iso_b, "second graph JSON file")->required();
    isotest->add_option("--oracle-limit", oracle_limit, "max nodes for the brute-force oracle");

    // properties
    auto *props = app.add_subcommand("properties", "randomized refinement property suites");
    int prop_pairs = 1000, prop_pool = 200;
    uint64_t prop_seed = 0;
    props->add_option("--pairs", prop_pairs, "random pairs per suite")->check(CLI::PositiveNumber);
    props->add_option("--pool", prop_pool, "graph pool size for the soundness suite");
    props->add_option("--seed", prop_seed, "rng seed");

    // wl-classify
    auto *wlc = app.add_subcommand("wl-classify", "WL-feature baseline cross-validation");
    std::string wlc_name, wlc_dir, wlc_variant = "ewl";
    int wlc_depth = 3, wlc_folds = 10;
    uint64_t wlc_seed = 0;
    wlc->add_option("--dataset", wlc_name, "dataset name")->required();
    wlc->add_option("--dir", wlc_dir, "explicit dataset directory");
    wlc->add_option("--variant", wlc_variant, "wl1 | ewl | ewl-ea");
    wlc->add_option("--depth", wlc_depth, "refinement depth");
    wlc->add_option("--folds", wlc_folds, "number of folds");
    wlc->add_option("--seed", wlc_seed, "rng seed");

    // cv
    auto *cv = app.add_subcommand("cv", "cross-validated model training");
    std::string cv_name, cv_dir, cv_variant = "egin";
    ewl::TrainConfig cfg;
    int jobs = 1;
    bool use_epsilon = false;
    cv->add_option("--dataset", cv_name, "dataset name")->required();
    cv->add_option("--dir", cv_dir, "explicit dataset directory");
    cv->add_option("--variant", cv_variant, "egin | egin-c | egin-e | gin");
    cv->add_flag("--epsilon", use_epsilon, "learnable per-layer epsilon");
    cv->add_option("--hidden-dim", cfg.hidden_dim, "hidden dimension, from {32,64,128}");
    cv->add_option("--embedding-dim", cfg.embedding_dim, "edge embedding dimension, from {8,16,32}");
    cv->add_option("--layers", cfg.num_layers, "number of layers");
    cv->add_option("--epochs", cfg.epochs, "training epochs");
    cv->add_option("--lr", cfg.learning_rate, "learning rate");
    cv->add_option("--seed", cfg.seed, "rng seed");
    cv->add_option("--folds", cfg.folds, "number of folds");
    cv->add_option("--jobs", jobs, "parallel fold workers");

    // grad-check
    auto *gc = app.add_subcommand("grad-check", "finite-difference gradient verification");
    uint64_t gc_seed = 0;
    gc->add_option("--seed", gc_seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*fetch) {
            fs::path cache = cache_dir.empty() ? ewl::default_cache_dir() : fs::path(cache_dir);
            fs::path dir = ewl::fetch_tu_dataset(fetch_name, cache);
            std::cout << "fetched " << fetch_name << " -> " << dir.string() << "\n";
        } else if (*stats) {
            auto ds = load_dataset(stats_name, stats_dir);
            auto s = ewl::dataset_stats(ds);
            json j = {{"name", ds.name},
                      {"num_graphs", s.num_graphs},
                      {"num_classes", s.num_classes},
                      {"avg_nodes", s.avg_nodes},
                      {"avg_edges_undirected", s.avg_edges},
                      {"avg_edges_directed_records", 2 * s.avg_edges},
                      {"node_feature_dim", s.node_feature_dim},
                      {"edge_feature_dim", s.edge_feature_dim}};
            if (as_json) {
                emit(j, output);
            } else {
                std::printf("%-12s graphs %d  classes %d  avg nodes %.2f  avg edges %.2f "
                            "(directed records %.2f)  node dim %d  edge dim %d\n",
                            ds.name.c_str(), s.num_graphs, s.num_classes, s.avg_nodes, s.avg_edges,
                            2 * s.avg_edges, s.node_feature_dim, s.edge_feature_dim);
            }
        } else if (*refine_cmd) {
            ewl::Graph g = load_graph_file(refine_input);
            auto variant = wl_variant_from_string(refine_variant);
            auto res = ewl::refine(std::span<const ewl::Graph>(&g, 1), variant);
            json j = {{"variant", refine_variant},
                      {"signature", ewl::signature_to_json(res[0].signature)},
                      {"trace", ewl::trace_to_json(res[0].trace)}};
            emit(j, output);
        } else if (*isotest) {
            ewl::Graph a = load_graph_file(iso_a);
            ewl::Graph b = load_graph_file(iso_b);
            json j;
            for (auto v : {ewl::WlVariant::WL1, ewl::WlVariant::EWL, ewl::WlVariant::EWLEA})
                j["wl"][ewl::to_string(v)] =
                    ewl::distinguishable(a, b, v) ? "distinguishable" : "indistinguishable";
            if (a.node_count() <= oracle_limit && b.node_count() <= oracle_limit) {
                auto iso = ewl::brute_force_isomorphic(a, b, oracle_limit);
                j["oracle"] = iso.isomorphic ? "isomorphic" : "not isomorphic";
                if (iso.witness) j["witness"] = iso.witness->map;
            } else {
                j["oracle"] = "skipped (over size limit)";
            }
            if (as_json) {
                emit(j, output);
            } else {
                for (auto v : {ewl::WlVariant::WL1, ewl::WlVariant::EWL, ewl::WlVariant::EWLEA})
                    std::cout << ewl::to_string(v) << ": "
                              << j["wl"][ewl::to_string(v)].get<std::string>() << "\n";
                std::cout << "oracle: " << j["oracle"].get<std::string>() << "\n";
            }
        } else if (*props) {
            json suites = json::array();
            bool ok = true;
            for (const auto &rep : {ewl::run_dominance_suite(prop_pairs, prop_seed),
                                    ewl::run_constant_edge_suite(prop_pairs, prop_seed + 1),
                                    ewl::run_edge_color_equivalence_suite(prop_pairs, prop_seed + 2),
                                    ewl::run_soundness_suite(prop_pool, prop_seed + 3)}) {
                suites.push_back(rep.to_json());
                ok = ok && rep.passed();
                if (!as_json)
                    std::printf("%-16s pairs %-6d violations %-4d witnesses %-5d %s\n",
                                rep.name.c_str(), rep.pairs, rep.violations,
                                rep.strictness_witnesses, rep.passed() ? "PASS" : "FAIL");
            }
            if (as_json) emit(suites, output);
            if (!ok) return kExitViolation;
        } else if (*wlc) {
            auto ds = load_dataset(wlc_name, wlc_dir);
            auto rep = ewl::wl_baseline_cv(ds, wl_variant_from_string(wlc_variant), wlc_depth,
                                           wlc_folds, wlc_seed);
            if (as_json) emit(rep.to_json(), output);
            else std::cout << rep.table_row(wlc_name + "/" + wlc_variant) << "\n";
        } else if (*cv) {
            const std::vector<int> hidden_grid{32, 64, 128};
            const std::vector<int> emb_grid{8, 16, 32};
            if (std::find(hidden_grid.begin(), hidden_grid.end(), cfg.hidden_dim) ==
                hidden_grid.end())
                throw CLI::ValidationError("--hidden-dim must be one of {32,64,128}");
            cfg.variant = ewl::egin_variant_from_string(cv_variant);
            cfg.use_epsilon = use_epsilon;
            if (cfg.variant == ewl::EginVariant::EginE &&
                std::find(emb_grid.begin(), emb_grid.end(), cfg.embedding_dim) == emb_grid.end())
                throw CLI::ValidationError("--embedding-dim must be one of {8,16,32}");
            auto ds = cv_name == "edge-toy" ? ewl::make_edge_feature_toy_dataset()
                                            : load_dataset(cv_name, cv_dir);
            auto rep = ewl::cross_validate(ds, cfg, jobs);
            if (as_json) emit(rep.to_json(), output);
            else std::cout << rep.table_row(cv_name + "/" + cv_variant) << "\n";
        } else if (*gc) {
            std::mt19937_64 rng(gc_seed);
            ewl::Graph g = ewl::random_attributed_graph(rng, 6, 2, 3, 0.5);
            json j = json::array();
            bool ok = true;
            struct Case { ewl::EginVariant v; bool eps; };
            for (auto [v, eps] : {Case{ewl::EginVariant::Egin, false},
                                  Case{ewl::EginVariant::Egin, true},
                                  Case{ewl::EginVariant::EginC, false},
                                  Case{ewl::EginVariant::EginE, false}}) {
                ewl::ModelDims dims;
                dims.node_dim = 2;
                dims.edge_dim = 3;
                dims.hidden = 8;
                dims.embedding = 4;
                dims.num_classes = 2;
                dims.num_layers = 2;
                auto m = ewl::make_egin_model(v, eps, dims, gc_seed);
                double err = ewl::grad_check(m, g, 1);
                bool pass = err < 1e-4;
                ok = ok && pass;
                std::string label = std::string(ewl::to_string(v)) + (eps ? "-eps" : "");
                j.push_back({{"variant", label}, {"max_rel_error", err}, {"pass", pass}});
                if (!as_json)
                    std::printf("%-12s max rel error %.3e  %s\n", label.c_str(), err,
                                pass ? "PASS" : "FAIL");
            }
            if (as_json) emit(j, output);
            if (!ok) return kExitViolation;
        }
    } catch (const CLI::ValidationError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
