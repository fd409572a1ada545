#pragma once

#include <json.hpp>

#include "ewl/egin.hpp"

namespace ewl {

inline EginVariant egin_variant_from_string(const std::string &s) {
    if (s == "egin") return EginVariant::Egin;
    if (s == "egin-c") return EginVariant::EginC;
    if (s == "egin-e") return EginVariant::EginE;
    if (s == "gin") return EginVariant::Gin;
    throw std::invalid_argument("unknown model variant: " + s);
}

// Checkpoint layout: dims, variant, seed and one flat parameter array in
// the canonical parameter order. nlohmann emits shortest round-trip decimal
// for doubles, so save/load is bit-exact.
inline nlohmann::json save_checkpoint(const EginModel &model) {
    EginModel m = model;
    nlohmann::json j;
    j["variant"] = to_string(m.variant);
    j["use_epsilon"] = m.use_epsilon;
    j["seed"] = m.seed;
    j["dims"] = {{"node_dim", m.dims.node_dim},     {"edge_dim", m.dims.edge_dim},
                 {"hidden", m.dims.hidden},         {"embedding", m.dims.embedding},
                 {"num_classes", m.dims.num_classes}, {"num_layers", m.dims.num_layers}};
    std::vector<double> flat;
    for (double *p : parameter_pointers(m)) flat.push_back(*p);
    j["parameters"] = flat;
    return j;
}

inline EginModel load_checkpoint(const nlohmann::json &j) {
    ModelDims dims;
    const auto &d = j.at("dims");
    dims.node_dim = d.at("node_dim").get<int>();
    dims.edge_dim = d.at("edge_dim").get<int>();
    dims.hidden = d.at("hidden").get<int>();
    dims.embedding = d.at("embedding").get<int>();
    dims.num_classes = d.at("num_classes").get<int>();
    dims.num_layers = d.at("num_layers").get<int>();
    EginModel m = make_egin_model(egin_variant_from_string(j.at("variant").get<std::string>()),
                                  j.at("use_epsilon").get<bool>(), dims,
                                  j.at("seed").get<uint64_t>());
    auto flat = j.at("parameters").get<std::vector<double>>();
    auto ptrs = parameter_pointers(m);
    if (flat.size() != ptrs.size())
        throw std::runtime_error("checkpoint: parameter count mismatch");
    for (size_t i = 0; i < ptrs.size(); ++i) *ptrs[i] = flat[i];
    return m;
}

}  // namespace ewl
