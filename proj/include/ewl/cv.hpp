#pragma once

#include <chrono>
#include <cmath>
#include <future>
#include <json.hpp>
#include <numeric>
#include <random>

#include "ewl/egin.hpp"
#include "ewl/tu_dataset.hpp"
#include "ewl/wl.hpp"

namespace ewl {

struct TrainConfig {
    EginVariant variant = EginVariant::Egin;
    bool use_epsilon = false;
    int hidden_dim = 32;
    int embedding_dim = 16;  // EGIN-E only
    int num_layers = 2;
    int epochs = 100;
    double learning_rate = 0.01;
    uint64_t seed = 0;
    int folds = 10;
    int minibatch = 32;               // used above the full-batch cutoff
    int full_batch_max_graphs = 500;  // full-batch at or below this train-set size

    nlohmann::json to_json() const {
        return {{"variant", to_string(variant)},
                {"use_epsilon", use_epsilon},
                {"hidden_dim", hidden_dim},
                {"embedding_dim", embedding_dim},
                {"num_layers", num_layers},
                {"epochs", epochs},
                {"learning_rate", learning_rate},
                {"seed", seed},
                {"folds", folds}};
    }
};

struct CvReport {
    std::vector<double> fold_accuracies;
    double mean = 0.0;
    double stddev = 0.0;  // population std over folds
    nlohmann::json config;
    double wall_seconds = 0.0;

    void finalize() {
        mean = std::accumulate(fold_accuracies.begin(), fold_accuracies.end(), 0.0) /
               fold_accuracies.size();
        double var = 0.0;
        for (double a : fold_accuracies) var += (a - mean) * (a - mean);
        stddev = std::sqrt(var / fold_accuracies.size());
    }

    nlohmann::json to_json(bool include_timing = true) const {
        nlohmann::json j = {{"fold_accuracies", fold_accuracies},
                            {"mean", mean},
                            {"stddev", stddev},
                            {"stddev_convention", "population"},
                            {"config", config}};
        if (include_timing) j["wall_seconds"] = wall_seconds;
        return j;
    }

    // Mirrors the usual "mean ± std" percent row format, one decimal.
    std::string table_row(const std::string &label) const {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-18s %.1f ± %.1f", label.c_str(), mean * 100,
                      stddev * 100);
        return buf;
    }
};

// Deterministic stratified k-fold split: per-class shuffle with the seed,
// then round-robin dealing, so fold class proportions stay within one graph
// of the global proportions.
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> stratified_kfold(
    const std::vector<int> &labels, int k, uint64_t seed) {
    std::map<int, std::vector<int>> by_class;
    for (size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(static_cast<int>(i));
    for (auto &[cls, idx] : by_class)
        if (static_cast<int>(idx.size()) < k)
            throw std::invalid_argument("stratified_kfold: class " + std::to_string(cls) +
                                        " has fewer than k members");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> test_folds(k);
    for (auto &[cls, idx] : by_class) {
        std::shuffle(idx.begin(), idx.end(), rng);
        for (size_t i = 0; i < idx.size(); ++i) test_folds[i % k].push_back(idx[i]);
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> folds;
    for (int f = 0; f < k; ++f) {
        std::sort(test_folds[f].begin(), test_folds[f].end());
        std::vector<char> in_test(labels.size(), 0);
        for (int i : test_folds[f]) in_test[i] = 1;
        std::vector<int> train;
        for (size_t i = 0; i < labels.size(); ++i)
            if (!in_test[i]) train.push_back(static_cast<int>(i));
        folds.emplace_back(std::move(train), std::move(test_folds[f]));
    }
    return folds;
}

struct TrainLog {
    std::vector<double> epoch_loss;
};

namespace detail {

struct Adam {
    std::vector<double> m, v;
    double lr, beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    long t = 0;

    Adam(size_t n, double lr_) : m(n, 0.0), v(n, 0.0), lr(lr_) {}

    void step(const std::vector<double *> &params, const std::vector<double *> &grads) {
        ++t;
        double bc1 = 1.0 - std::pow(beta1, t);
        double bc2 = 1.0 - std::pow(beta2, t);
        for (size_t i = 0; i < params.size(); ++i) {
            double g = *grads[i];
            m[i] = beta1 * m[i] + (1 - beta1) * g;
            v[i] = beta2 * v[i] + (1 - beta2) * g * g;
            *params[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
        }
    }
};

inline void accumulate(EginModel &total, EginModel &delta, double scale) {
    auto tp = parameter_pointers(total);
    auto dp = parameter_pointers(delta);
    for (size_t i = 0; i < tp.size(); ++i) *tp[i] += scale * *dp[i];
}

}  // namespace detail

// Minimizes mean cross-entropy with Adam. Full-batch for small train sets,
// otherwise shuffled minibatches; deterministic given the seed.
inline EginModel train(const TrainConfig &cfg, const std::vector<const Graph *> &graphs,
                       const std::vector<int> &labels, int node_dim, int edge_dim, int num_classes,
                       TrainLog *log = nullptr) {
    if (graphs.empty()) throw std::invalid_argument("train: empty train set");
    ModelDims dims;
    dims.node_dim = node_dim;
    dims.edge_dim = edge_dim;
    dims.hidden = cfg.hidden_dim;
    dims.embedding = cfg.embedding_dim;
    dims.num_classes = num_classes;
    dims.num_layers = cfg.num_layers;
    EginModel model = make_egin_model(cfg.variant, cfg.use_epsilon, dims, cfg.seed);

    auto params = parameter_pointers(model);
    detail::Adam opt(params.size(), cfg.learning_rate);
    std::mt19937_64 shuffle_rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

    const int n = static_cast<int>(graphs.size());
    const bool full_batch = n <= cfg.full_batch_max_graphs;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (!full_batch) std::shuffle(order.begin(), order.end(), shuffle_rng);
        double epoch_loss = 0.0;
        int batch = full_batch ? n : cfg.minibatch;
        for (int start = 0; start < n; start += batch) {
            int end = std::min(n, start + batch);
            EginModel grads = zeros_like(model);
            double inv = 1.0 / (end - start);
            for (int q = start; q < end; ++q) {
                int i = order[q];
                ForwardCache cache;
                auto logits = model_forward(model, *graphs[i], &cache);
                std::vector<double> dlogits;
                double loss = cross_entropy(logits, labels[i], &dlogits);
                if (!std::isfinite(loss))
                    throw std::runtime_error("train: non-finite loss at epoch " +
                                             std::to_string(epoch));
                epoch_loss += loss;
                for (double &d : dlogits) d *= inv;
                EginModel gi = model_backward(model, *graphs[i], cache, dlogits);
                detail::accumulate(grads, gi, 1.0);
            }
            opt.step(params, parameter_pointers(grads));
        }
        if (log) log->epoch_loss.push_back(epoch_loss / n);
    }
    return model;
}

// Argmax with ties broken toward the lowest class index.
inline int predict(const EginModel &m, const Graph &g) {
    auto logits = model_forward(m, g, nullptr);
    int best = 0;
    for (size_t c = 1; c < logits.size(); ++c)
        if (logits[c] > logits[best]) best = static_cast<int>(c);
    return best;
}

inline double accuracy(const EginModel &m, const std::vector<const Graph *> &graphs,
                       const std::vector<int> &labels) {
    int correct = 0;
    for (size_t i = 0; i < graphs.size(); ++i)
        if (predict(m, *graphs[i]) == labels[i]) ++correct;
    return static_cast<double>(correct) / graphs.size();
}

inline CvReport cross_validate(const Dataset &ds, const TrainConfig &cfg, int jobs = 1,
                               std::vector<TrainLog> *logs = nullptr) {
    auto t0 = std::chrono::steady_clock::now();
    int node_dim = ds.graphs[0].node_feature_dim();
    int edge_dim = 0;
    for (const auto &g : ds.graphs)
        if (g.edge_count() > 0) edge_dim = g.edge_feature_dim();

    auto folds = stratified_kfold(ds.class_labels, cfg.folds, cfg.seed);
    CvReport report;
    report.fold_accuracies.resize(folds.size());
    if (logs) logs->resize(folds.size());

    auto run_fold = [&](int f) {
        const auto &[train_idx, test_idx] = folds[f];
        std::vector<const Graph *> train_g, test_g;
        std::vector<int> train_y, test_y;
        for (int i : train_idx) {
            train_g.push_back(&ds.graphs[i]);
            train_y.push_back(ds.class_labels[i]);
        }
        for (int i : test_idx) {
            test_g.push_back(&ds.graphs[i]);
            test_y.push_back(ds.class_labels[i]);
        }
        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = cfg.seed + 1000003ull * static_cast<uint64_t>(f);
        EginModel m = train(fold_cfg, train_g, train_y, node_dim, edge_dim, ds.num_classes,
                            logs ? &(*logs)[f] : nullptr);
        report.fold_accuracies[f] = accuracy(m, test_g, test_y);
    };

    if (jobs <= 1) {
        for (size_t f = 0; f < folds.size(); ++f) run_fold(static_cast<int>(f));
    } else {
        std::vector<std::future<void>> futures;
        for (size_t f = 0; f < folds.size(); ++f)
            futures.push_back(std::async(std::launch::async, run_fold, static_cast<int>(f)));
        for (auto &fut : futures) fut.get();
    }

    report.config = cfg.to_json();
    report.finalize();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// Non-neural floor: WL subtree histogram features with a one-vs-rest
// logistic classifier trained by full-batch gradient descent.
inline CvReport wl_baseline_cv(const Dataset &ds, WlVariant variant, int depth, int k,
                               uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    auto sparse = wl_feature_vectors(
        std::span<const Graph>(ds.graphs.data(), ds.graphs.size()), variant, depth);

    // Dense index over all colors seen anywhere in the corpus.
    std::map<int, int> color_index;
    for (const auto &f : sparse)
        for (auto [c, _] : f) color_index.emplace(c, 0);
    int dim = 0;
    for (auto &[c, idx] : color_index) idx = dim++;
    const int n = static_cast<int>(ds.graphs.size());
    std::vector<std::vector<std::pair<int, double>>> feats(n);
    for (int i = 0; i < n; ++i)
        for (auto [c, count] : sparse[i])
            feats[i].emplace_back(color_index[c], static_cast<double>(count));

    auto folds = stratified_kfold(ds.class_labels, k, seed);
    CvReport report;
    for (const auto &[train_idx, test_idx] : folds) {
        // One weight vector (plus bias) per class, zero-initialized.
        std::vector<std::vector<double>> w(ds.num_classes, std::vector<double>(dim + 1, 0.0));
        const double lr = 0.05;
        const int epochs = 300;
        auto score = [&](int cls, int i) {
            double s = w[cls][dim];
            for (auto [f, v] : feats[i]) s += w[cls][f] * v;
            return s;
        };
        for (int epoch = 0; epoch < epochs; ++epoch) {
            for (int cls = 0; cls < ds.num_classes; ++cls) {
                std::vector<double> grad(dim + 1, 0.0);
                for (int i : train_idx) {
                    double target = ds.class_labels[i] == cls ? 1.0 : 0.0;
                    double p = 1.0 / (1.0 + std::exp(-score(cls, i)));
                    double err = p - target;
                    for (auto [f, v] : feats[i]) grad[f] += err * v;
                    grad[dim] += err;
                }
                double inv = 1.0 / train_idx.size();
                for (int f = 0; f <= dim; ++f) w[cls][f] -= lr * inv * grad[f];
            }
        }
        int correct = 0;
        for (int i : test_idx) {
            int best = 0;
            double best_score = score(0, i);
            for (int cls = 1; cls < ds.num_classes; ++cls) {
                double s = score(cls, i);
                if (s > best_score) {
                    best_score = s;
                    best = cls;
                }
            }
            if (best == ds.class_labels[i]) ++correct;
        }
        report.fold_accuracies.push_back(static_cast<double>(correct) / test_idx.size());
    }
    report.config = {{"classifier", "wl-histogram-ovr-logistic"},
                     {"variant", to_string(variant)},
                     {"depth", depth},
                     {"folds", k},
                     {"seed", seed}};
    report.finalize();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace ewl
