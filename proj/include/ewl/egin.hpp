#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ewl/graph.hpp"
#include "ewl/tensor.hpp"

namespace ewl {

enum class EginVariant { Egin, EginC, EginE, Gin };

inline const char *to_string(EginVariant v) {
    switch (v) {
        case EginVariant::Egin: return "egin";
        case EginVariant::EginC: return "egin-c";
        case EginVariant::EginE: return "egin-e";
        case EginVariant::Gin: return "gin";
    }
    return "?";
}

// Node-Edge tuple realized as concatenation, node part first.
inline std::vector<double> tuple_concat(const std::vector<double> &h, const std::vector<double> &e) {
    std::vector<double> out;
    out.reserve(h.size() + e.size());
    out.insert(out.end(), h.begin(), h.end());
    out.insert(out.end(), e.begin(), e.end());
    return out;
}

// Flattened outer product [h_0*e_0, h_0*e_1, ..., h_{p-1}*e_{q-1}].
inline std::vector<double> cross_update(const std::vector<double> &h, const std::vector<double> &e) {
    if (h.empty() || e.empty()) throw std::invalid_argument("cross_update: empty input vector");
    std::vector<double> out(h.size() * e.size());
    size_t idx = 0;
    for (double hv : h)
        for (double ev : e) out[idx++] = hv * ev;
    return out;
}

struct Affine {
    Tensor2 W;  // out x in
    std::vector<double> b;
};

// Two affine layers with a rectifier between them.
struct Mlp {
    Affine l1, l2;
    int in_dim() const { return l1.W.cols; }
    int out_dim() const { return l2.W.rows; }
};

struct EginLayer {
    Mlp mlp1;
    double epsilon = 0.0;
    bool has_mlp2 = false;
    Mlp mlp2;  // edge embedding, EGIN-E only
};

struct ModelDims {
    int node_dim = 0;
    int edge_dim = 0;
    int hidden = 32;
    int embedding = 16;  // EGIN-E only
    int num_classes = 2;
    int num_layers = 2;
};

struct EginModel {
    EginVariant variant = EginVariant::Egin;
    bool use_epsilon = false;
    ModelDims dims;
    std::vector<EginLayer> layers;
    Affine classifier;
    uint64_t seed = 0;
};

namespace detail {

inline int layer_input_node_dim(const EginModel &m, int layer) {
    return layer == 0 ? m.dims.node_dim : m.dims.hidden;
}

inline int layer_tuple_dim(const EginModel &m, int layer) {
    int h = layer_input_node_dim(m, layer);
    switch (m.variant) {
        case EginVariant::Egin: return h + m.dims.edge_dim;
        case EginVariant::EginC: return h * m.dims.edge_dim;
        case EginVariant::EginE: return h + m.dims.embedding;
        case EginVariant::Gin: return h;
    }
    return 0;
}

inline Affine random_affine(int out, int in, std::mt19937_64 &rng) {
    Affine a;
    a.W = Tensor2(out, in);
    a.b.assign(out, 0.0);
    double bound = 1.0 / std::sqrt(std::max(1, in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double &w : a.W.values) w = dist(rng);
    for (double &b : a.b) b = dist(rng);
    return a;
}

inline Mlp random_mlp(int in, int hidden, int out, std::mt19937_64 &rng) {
    Mlp m;
    m.l1 = random_affine(hidden, in, rng);
    m.l2 = random_affine(out, hidden, rng);
    return m;
}

}  // namespace detail

inline EginModel make_egin_model(EginVariant variant, bool use_epsilon, ModelDims dims,
                                 uint64_t seed) {
    if (variant == EginVariant::EginC && dims.edge_dim < 1)
        throw std::invalid_argument("egin-c requires edge feature dimension >= 1");
    EginModel m;
    m.variant = variant;
    m.use_epsilon = use_epsilon;
    m.dims = dims;
    m.seed = seed;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < dims.num_layers; ++k) {
        EginLayer layer;
        layer.mlp1 = detail::random_mlp(detail::layer_tuple_dim(m, k), dims.hidden, dims.hidden, rng);
        layer.epsilon = 0.0;
        if (variant == EginVariant::EginE) {
            layer.has_mlp2 = true;
            layer.mlp2 = detail::random_mlp(dims.edge_dim, dims.embedding, dims.embedding, rng);
        }
        m.layers.push_back(std::move(layer));
    }
    m.classifier = detail::random_affine(dims.num_classes, dims.hidden, rng);
    return m;
}

inline EginModel zeros_like(const EginModel &m) {
    EginModel z = m;
    for (auto &layer : z.layers) {
        std::fill(layer.mlp1.l1.W.values.begin(), layer.mlp1.l1.W.values.end(), 0.0);
        std::fill(layer.mlp1.l1.b.begin(), layer.mlp1.l1.b.end(), 0.0);
        std::fill(layer.mlp1.l2.W.values.begin(), layer.mlp1.l2.W.values.end(), 0.0);
        std::fill(layer.mlp1.l2.b.begin(), layer.mlp1.l2.b.end(), 0.0);
        layer.epsilon = 0.0;
        if (layer.has_mlp2) {
            std::fill(layer.mlp2.l1.W.values.begin(), layer.mlp2.l1.W.values.end(), 0.0);
            std::fill(layer.mlp2.l1.b.begin(), layer.mlp2.l1.b.end(), 0.0);
            std::fill(layer.mlp2.l2.W.values.begin(), layer.mlp2.l2.W.values.end(), 0.0);
            std::fill(layer.mlp2.l2.b.begin(), layer.mlp2.l2.b.end(), 0.0);
        }
    }
    std::fill(z.classifier.W.values.begin(), z.classifier.W.values.end(), 0.0);
    std::fill(z.classifier.b.begin(), z.classifier.b.end(), 0.0);
    return z;
}

// Deterministic flat parameter order shared by the optimizer, checkpoints
// and finite differencing. Epsilon participates only when learnable.
inline std::vector<double *> parameter_pointers(EginModel &m) {
    std::vector<double *> out;
    auto add_affine = [&out](Affine &a) {
        for (double &w : a.W.values) out.push_back(&w);
        for (double &b : a.b) out.push_back(&b);
    };
    for (auto &layer : m.layers) {
        add_affine(layer.mlp1.l1);
        add_affine(layer.mlp1.l2);
        if (m.use_epsilon) out.push_back(&layer.epsilon);
        if (layer.has_mlp2) {
            add_affine(layer.mlp2.l1);
            add_affine(layer.mlp2.l2);
        }
    }
    add_affine(m.classifier);
    return out;
}

struct MlpCache {
    std::vector<double> input;
    std::vector<double> pre1;  // hidden pre-activations
};

inline std::vector<double> mlp_forward(const Mlp &m, const std::vector<double> &x, MlpCache *cache) {
    std::vector<double> a1(m.l1.W.rows);
    affine_apply(m.l1.W, m.l1.b, x.data(), a1.data());
    std::vector<double> r(a1);
    for (double &v : r) v = std::max(0.0, v);
    std::vector<double> out(m.l2.W.rows);
    affine_apply(m.l2.W, m.l2.b, r.data(), out.data());
    if (cache) {
        cache->input = x;
        cache->pre1 = std::move(a1);
    }
    return out;
}

// Accumulates into grads; returns gradient w.r.t. the input.
inline std::vector<double> mlp_backward(const Mlp &m, const MlpCache &cache,
                                        const std::vector<double> &out_grad, Mlp &grads) {
    std::vector<double> relu(cache.pre1);
    for (double &v : relu) v = std::max(0.0, v);
    std::vector<double> dr(m.l2.W.cols, 0.0);
    affine_backward(m.l2.W, relu.data(), out_grad.data(), grads.l2.W, grads.l2.b, dr.data());
    for (size_t i = 0; i < dr.size(); ++i)
        if (cache.pre1[i] <= 0.0) dr[i] = 0.0;
    std::vector<double> dx(m.l1.W.cols, 0.0);
    affine_backward(m.l1.W, cache.input.data(), dr.data(), grads.l1.W, grads.l1.b, dx.data());
    return dx;
}

struct LayerCache {
    Tensor2 H_in;
    Tensor2 Z;                        // pre-MLP1 aggregates
    std::vector<MlpCache> mlp1;       // per node
    std::vector<std::vector<double>> edge_emb;  // EGIN-E: MLP2 output per edge
    std::vector<MlpCache> mlp2;                 // per edge
    std::vector<double> delta_emb;              // MLP2(void edge)
    MlpCache mlp2_delta;
};

struct ForwardCache {
    std::vector<LayerCache> layers;
    Tensor2 H_final;
    std::vector<double> graph_embedding;
    MlpCache classifier;  // only .input used
};

namespace detail {

// z += scale * T(h, e) where T is the variant's tuple realization.
inline void add_tuple(EginVariant variant, double scale, const double *h, int hdim,
                      const std::vector<double> &e, double *z) {
    switch (variant) {
        case EginVariant::Egin:
        case EginVariant::EginE:
            for (int a = 0; a < hdim; ++a) z[a] += scale * h[a];
            for (size_t b = 0; b < e.size(); ++b) z[hdim + b] += scale * e[b];
            break;
        case EginVariant::EginC: {
            size_t idx = 0;
            for (int a = 0; a < hdim; ++a)
                for (size_t b = 0; b < e.size(); ++b) z[idx++] += scale * h[a] * e[b];
            break;
        }
        case EginVariant::Gin:
            for (int a = 0; a < hdim; ++a) z[a] += scale * h[a];
            break;
    }
}

// Reverse of add_tuple: distribute dz into h_grad (and e_grad when not null).
inline void tuple_backward(EginVariant variant, double scale, const double *h, int hdim,
                           const std::vector<double> &e, const double *dz, double *h_grad,
                           double *e_grad) {
    switch (variant) {
        case EginVariant::Egin:
        case EginVariant::EginE:
            for (int a = 0; a < hdim; ++a) h_grad[a] += scale * dz[a];
            if (e_grad)
                for (size_t b = 0; b < e.size(); ++b) e_grad[b] += scale * dz[hdim + b];
            break;
        case EginVariant::EginC: {
            size_t idx = 0;
            for (int a = 0; a < hdim; ++a)
                for (size_t b = 0; b < e.size(); ++b, ++idx) {
                    h_grad[a] += scale * dz[idx] * e[b];
                    if (e_grad) e_grad[b] += scale * dz[idx] * h[a];
                }
            break;
        }
        case EginVariant::Gin:
            for (int a = 0; a < hdim; ++a) h_grad[a] += scale * dz[a];
            break;
    }
}

// <dz, T(h, e)> — the epsilon gradient contribution of a self term.
inline double tuple_dot(EginVariant variant, const double *h, int hdim,
                        const std::vector<double> &e, const double *dz) {
    double acc = 0.0;
    switch (variant) {
        case EginVariant::Egin:
        case EginVariant::EginE:
            for (int a = 0; a < hdim; ++a) acc += dz[a] * h[a];
            for (size_t b = 0; b < e.size(); ++b) acc += dz[hdim + b] * e[b];
            break;
        case EginVariant::EginC: {
            size_t idx = 0;
            for (int a = 0; a < hdim; ++a)
                for (size_t b = 0; b < e.size(); ++b) acc += dz[idx++] * h[a] * e[b];
            break;
        }
        case EginVariant::Gin:
            for (int a = 0; a < hdim; ++a) acc += dz[a] * h[a];
            break;
    }
    return acc;
}

inline std::vector<double> self_edge(const EginModel &m) {
    switch (m.variant) {
        case EginVariant::Egin: return std::vector<double>(m.dims.edge_dim, 0.0);   // void edge
        case EginVariant::EginC: return std::vector<double>(m.dims.edge_dim, 1.0);  // unit edge
        default: return {};
    }
}

}  // namespace detail

inline Tensor2 egin_layer_forward(const EginModel &m, int k, const Graph &g, const Tensor2 &H,
                                  LayerCache *cache) {
    const EginLayer &layer = m.layers[k];
    const int n = g.node_count();
    const int hdim = detail::layer_input_node_dim(m, k);
    if (H.rows != n || H.cols != hdim)
        throw std::invalid_argument("egin_layer_forward: representation matrix shape mismatch");
    if (g.edge_count() > 0 && g.edge_feature_dim() != m.dims.edge_dim)
        throw std::invalid_argument("egin_layer_forward: edge feature dimension mismatch");
    const int zdim = detail::layer_tuple_dim(m, k);
    const double self_scale = m.use_epsilon ? 1.0 + layer.epsilon : 1.0;

    LayerCache local;
    LayerCache &c = cache ? *cache : local;
    c.H_in = H;
    c.Z = Tensor2(n, zdim);

    std::vector<double> self_e = detail::self_edge(m);
    if (m.variant == EginVariant::EginE) {
        c.mlp2_delta = MlpCache{};
        c.delta_emb = mlp_forward(layer.mlp2, std::vector<double>(m.dims.edge_dim, 0.0),
                                  &c.mlp2_delta);
        self_e = c.delta_emb;
        c.edge_emb.resize(g.edge_count());
        c.mlp2.resize(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e)
            c.edge_emb[e] = mlp_forward(layer.mlp2, g.edge_feature(e), &c.mlp2[e]);
    }

    for (int i = 0; i < n; ++i) {
        double *z = c.Z.row(i);
        detail::add_tuple(m.variant, self_scale, H.row(i), hdim, self_e, z);
        for (auto [j, e] : g.neighbors(i)) {
            const std::vector<double> &ef =
                m.variant == EginVariant::EginE ? c.edge_emb[e]
                : m.variant == EginVariant::Gin ? std::vector<double>{}
                                                : g.edge_feature(e);
            detail::add_tuple(m.variant, 1.0, H.row(j), hdim, ef, z);
        }
    }

    Tensor2 out(n, m.dims.hidden);
    c.mlp1.resize(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> zi(c.Z.row(i), c.Z.row(i) + zdim);
        auto oi = mlp_forward(layer.mlp1, zi, &c.mlp1[i]);
        check_finite(oi, "egin layer output");
        std::copy(oi.begin(), oi.end(), out.row(i));
    }
    return out;
}

inline std::vector<double> readout_sum(const Tensor2 &H) {
    if (H.rows == 0) throw std::invalid_argument("readout_sum: zero nodes");
    std::vector<double> out(H.cols, 0.0);
    for (int i = 0; i < H.rows; ++i)
        for (int c = 0; c < H.cols; ++c) out[c] += H(i, c);
    return out;
}

inline std::vector<double> model_forward(const EginModel &m, const Graph &g, ForwardCache *cache) {
    if (g.node_count() > 0 && g.node_feature_dim() != m.dims.node_dim)
        throw std::invalid_argument("model_forward: node feature dimension mismatch");
    const int n = g.node_count();
    Tensor2 H(n, m.dims.node_dim);
    for (int i = 0; i < n; ++i)
        std::copy(g.node_feature(i).begin(), g.node_feature(i).end(), H.row(i));

    if (cache) cache->layers.resize(m.layers.size());
    for (size_t k = 0; k < m.layers.size(); ++k)
        H = egin_layer_forward(m, static_cast<int>(k), g, H,
                               cache ? &cache->layers[k] : nullptr);

    std::vector<double> emb = readout_sum(H);
    std::vector<double> logits(m.dims.num_classes);
    affine_apply(m.classifier.W, m.classifier.b, emb.data(), logits.data());
    check_finite(logits, "logits");
    if (cache) {
        cache->H_final = std::move(H);
        cache->graph_embedding = emb;
        cache->classifier.input = std::move(emb);
    }
    return logits;
}

// Exact reverse-mode gradients w.r.t. every parameter, returned in a
// model-shaped container.
inline EginModel model_backward(const EginModel &m, const Graph &g, const ForwardCache &cache,
                                const std::vector<double> &logits_grad) {
    if (cache.layers.size() != m.layers.size())
        throw std::invalid_argument("model_backward: cache does not match model");
    EginModel grads = zeros_like(m);
    const int n = g.node_count();

    std::vector<double> demb(m.dims.hidden, 0.0);
    affine_backward(m.classifier.W, cache.classifier.input.data(), logits_grad.data(),
                    grads.classifier.W, grads.classifier.b, demb.data());

    // Readout sum broadcasts the embedding gradient to every node row.
    Tensor2 dH(n, m.dims.hidden);
    for (int i = 0; i < n; ++i)
        std::copy(demb.begin(), demb.end(), dH.row(i));

    for (int k = static_cast<int>(m.layers.size()) - 1; k >= 0; --k) {
        const EginLayer &layer = m.layers[k];
        EginLayer &lgrads = grads.layers[k];
        const LayerCache &c = cache.layers[k];
        const int hdim = detail::layer_input_node_dim(m, k);
        const int zdim = detail::layer_tuple_dim(m, k);
        const double self_scale = m.use_epsilon ? 1.0 + layer.epsilon : 1.0;

        Tensor2 dZ(n, zdim);
        for (int i = 0; i < n; ++i) {
            std::vector<double> doi(dH.row(i), dH.row(i) + m.dims.hidden);
            auto dzi = mlp_backward(layer.mlp1, c.mlp1[i], doi, lgrads.mlp1);
            std::copy(dzi.begin(), dzi.end(), dZ.row(i));
        }

        const std::vector<double> self_e =
            m.variant == EginVariant::EginE ? c.delta_emb : detail::self_edge(m);
        Tensor2 dH_in(n, hdim);
        std::vector<std::vector<double>> dE;  // EGIN-E: per-edge embedding gradients
        std::vector<double> dDelta;
        if (m.variant == EginVariant::EginE) {
            dE.assign(g.edge_count(), std::vector<double>(m.dims.embedding, 0.0));
            dDelta.assign(m.dims.embedding, 0.0);
        }

        for (int i = 0; i < n; ++i) {
            const double *dz = dZ.row(i);
            detail::tuple_backward(m.variant, self_scale, c.H_in.row(i), hdim, self_e, dz,
                                   dH_in.row(i),
                                   m.variant == EginVariant::EginE ? dDelta.data() : nullptr);
            if (m.use_epsilon)
                lgrads.epsilon += detail::tuple_dot(m.variant, c.H_in.row(i), hdim, self_e, dz);
            for (auto [j, e] : g.neighbors(i)) {
                const std::vector<double> &ef =
                    m.variant == EginVariant::EginE ? c.edge_emb[e]
                    : m.variant == EginVariant::Gin ? std::vector<double>{}
                                                    : g.edge_feature(e);
                detail::tuple_backward(m.variant, 1.0, c.H_in.row(j), hdim, ef, dz, dH_in.row(j),
                                       m.variant == EginVariant::EginE ? dE[e].data() : nullptr);
            }
        }

        if (m.variant == EginVariant::EginE) {
            for (int e = 0; e < g.edge_count(); ++e)
                mlp_backward(layer.mlp2, c.mlp2[e], dE[e], lgrads.mlp2);
            mlp_backward(layer.mlp2, c.mlp2_delta, dDelta, lgrads.mlp2);
        }
        dH = std::move(dH_in);
    }
    return grads;
}

// Mean softmax cross-entropy for one graph; fills dlogits when given.
inline double cross_entropy(const std::vector<double> &logits, int label,
                            std::vector<double> *dlogits) {
    double mx = logits[0];
    for (double v : logits) mx = std::max(mx, v);
    double sum = 0.0;
    for (double v : logits) sum += std::exp(v - mx);
    double loss = -(logits[label] - mx - std::log(sum));
    if (dlogits) {
        dlogits->resize(logits.size());
        for (size_t c = 0; c < logits.size(); ++c)
            (*dlogits)[c] = std::exp(logits[c] - mx) / sum - (static_cast<int>(c) == label ? 1.0 : 0.0);
    }
    return loss;
}

// Max relative error between analytic and central-difference gradients of
// the cross-entropy loss, over every parameter.
inline double grad_check(const EginModel &model, const Graph &g, int label, double step = 1e-5) {
    EginModel m = model;
    ForwardCache cache;
    auto logits = model_forward(m, g, &cache);
    std::vector<double> dlogits;
    cross_entropy(logits, label, &dlogits);
    EginModel analytic = model_backward(m, g, cache, dlogits);

    auto params = parameter_pointers(m);
    auto agrads = parameter_pointers(analytic);
    double max_rel = 0.0;
    for (size_t p = 0; p < params.size(); ++p) {
        double saved = *params[p];
        *params[p] = saved + step;
        double lp = cross_entropy(model_forward(m, g, nullptr), label, nullptr);
        *params[p] = saved - step;
        double lm = cross_entropy(model_forward(m, g, nullptr), label, nullptr);
        *params[p] = saved;
        double cd = (lp - lm) / (2 * step);
        double an = *agrads[p];
        double rel = std::abs(an - cd) / std::max({std::abs(an), std::abs(cd), 1e-8});
        max_rel = std::max(max_rel, rel);
    }
    return max_rel;
}

}  // namespace ewl
