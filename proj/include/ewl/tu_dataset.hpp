#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ewl/graph.hpp"

namespace ewl {

struct Dataset {
    std::string name;
    std::vector<Graph> graphs;
    std::vector<int> class_labels;  // 0-based dense
    int num_classes = 0;
    std::vector<long> node_label_alphabet;  // sorted distinct raw labels
    std::vector<long> edge_label_alphabet;
};

struct DatasetStats {
    int num_graphs = 0;
    int num_classes = 0;
    double avg_nodes = 0.0;
    double avg_edges = 0.0;  // undirected edge count
    int node_feature_dim = 0;
    int edge_feature_dim = 0;
};

namespace detail {

inline std::vector<std::string> read_lines(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("tu: cannot open " + p.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty() || in.peek() != EOF) lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

inline long parse_long(const std::string &s, const std::string &ctx) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception &) {
        throw std::runtime_error("tu: bad integer '" + s + "' in " + ctx);
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::runtime_error("tu: trailing junk in '" + s + "' in " + ctx);
    return v;
}

inline std::vector<long> read_int_column(const std::filesystem::path &p) {
    auto lines = read_lines(p);
    std::vector<long> out;
    out.reserve(lines.size());
    for (const auto &l : lines) out.push_back(parse_long(l, p.filename().string()));
    return out;
}

inline std::vector<double> split_doubles(const std::string &line, const std::string &ctx) {
    std::vector<double> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception &) {
            throw std::runtime_error("tu: bad number '" + field + "' in " + ctx);
        }
    }
    return out;
}

}  // namespace detail

// Parse a TU-Dortmund-format dataset directory. Directed duplicate edge
// records are merged into one undirected edge; both directions must carry
// the same label. Node labels (when present) are one-hot encoded over the
// dataset-wide sorted alphabet; otherwise continuous node attributes are
// used verbatim, and failing both, one-hot degree features are assigned.
inline Dataset parse_tu_dataset(const std::filesystem::path &dir, const std::string &name) {
    namespace fs = std::filesystem;
    auto file = [&](const std::string &suffix) { return dir / (name + suffix); };

    for (const char *suffix : {"_A.txt", "_graph_indicator.txt", "_graph_labels.txt"})
        if (!fs::exists(file(suffix)))
            throw std::runtime_error("tu: missing mandatory file " + file(suffix).string());

    auto indicator = detail::read_int_column(file("_graph_indicator.txt"));
    auto raw_graph_labels = detail::read_int_column(file("_graph_labels.txt"));
    const long num_graphs = static_cast<long>(raw_graph_labels.size());
    const long num_nodes = static_cast<long>(indicator.size());

    // graph_indicator must be non-decreasing and cover 1..num_graphs.
    long prev = 1;
    for (long gid : indicator) {
        if (gid < prev || gid > num_graphs || gid > prev + 1)
            throw std::runtime_error("tu: graph_indicator not contiguous");
        prev = gid;
    }
    if (num_nodes > 0 && (indicator.front() != 1 || indicator.back() != num_graphs))
        throw std::runtime_error("tu: graph_indicator not contiguous");

    std::vector<int> node_graph(num_nodes);        // 0-based graph id per global node
    std::vector<int> node_local(num_nodes);        // local index within its graph
    std::vector<int> graph_size(num_graphs, 0);
    for (long v = 0; v < num_nodes; ++v) {
        int g = static_cast<int>(indicator[v] - 1);
        node_graph[v] = g;
        node_local[v] = graph_size[g]++;
    }

    // Edge list.
    auto a_lines = detail::read_lines(file("_A.txt"));
    std::vector<std::pair<long, long>> records;
    records.reserve(a_lines.size());
    for (const auto &line : a_lines) {
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("tu: malformed edge record '" + line + "'");
        long u = detail::parse_long(line.substr(0, comma), "_A.txt");
        long v = detail::parse_long(line.substr(comma + 1), "_A.txt");
        if (u < 1 || u > num_nodes || v < 1 || v > num_nodes)
            throw std::runtime_error("tu: edge endpoint out of range in _A.txt");
        records.emplace_back(u - 1, v - 1);
    }

    std::vector<long> edge_labels;
    bool have_edge_labels = fs::exists(file("_edge_labels.txt"));
    if (have_edge_labels) {
        edge_labels = detail::read_int_column(file("_edge_labels.txt"));
        if (edge_labels.size() != records.size())
            throw std::runtime_error("tu: edge label count inconsistent with edge record count");
    }

    bool have_node_labels = fs::exists(file("_node_labels.txt"));
    std::vector<long> node_labels;
    if (have_node_labels) {
        node_labels = detail::read_int_column(file("_node_labels.txt"));
        if (static_cast<long>(node_labels.size()) != num_nodes)
            throw std::runtime_error("tu: node label count inconsistent with node count");
    }
    bool have_node_attrs = !have_node_labels && fs::exists(file("_node_attributes.txt"));
    std::vector<std::vector<double>> node_attrs;
    if (have_node_attrs) {
        auto lines = detail::read_lines(file("_node_attributes.txt"));
        if (static_cast<long>(lines.size()) != num_nodes)
            throw std::runtime_error("tu: node attribute count inconsistent with node count");
        for (const auto &l : lines) node_attrs.push_back(detail::split_doubles(l, "_node_attributes.txt"));
    }

    Dataset ds;
    ds.name = name;

    // Alphabets over the whole dataset.
    if (have_node_labels) {
        std::set<long> alpha(node_labels.begin(), node_labels.end());
        ds.node_label_alphabet.assign(alpha.begin(), alpha.end());
    }
    if (have_edge_labels) {
        std::set<long> alpha(edge_labels.begin(), edge_labels.end());
        ds.edge_label_alphabet.assign(alpha.begin(), alpha.end());
    }
    auto one_hot = [](const std::vector<long> &alphabet, long raw) {
        FeatureVec f(alphabet.size(), 0.0);
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), raw);
        f[static_cast<size_t>(it - alphabet.begin())] = 1.0;
        return f;
    };

    // Merge directed records per graph.
    struct EdgeAcc {
        std::map<std::pair<int, int>, long> label;  // canonical (min,max) -> raw label
    };
    std::vector<EdgeAcc> acc(num_graphs);
    for (size_t r = 0; r < records.size(); ++r) {
        auto [u, v] = records[r];
        if (node_graph[u] != node_graph[v])
            throw std::runtime_error("tu: edge crosses graph boundary in _A.txt");
        int g = node_graph[u];
        int a = node_local[u], b = node_local[v];
        if (a > b) std::swap(a, b);
        long lab = have_edge_labels ? edge_labels[r] : 0;
        auto [it, inserted] = acc[g].label.emplace(std::make_pair(a, b), lab);
        if (!inserted && it->second != lab)
            throw std::runtime_error("tu: conflicting edge labels for the two directions of an edge");
    }

    // Dataset-wide max degree for the degree-feature fallback.
    int max_degree = 0;
    if (!have_node_labels && !have_node_attrs) {
        std::vector<int> deg(num_nodes, 0);
        std::set<std::pair<long, long>> seen;
        for (auto [u, v] : records) {
            auto key = std::minmax(u, v);
            if (seen.insert({key.first, key.second}).second) {
                ++deg[u];
                ++deg[v];
            }
        }
        for (int d : deg) max_degree = std::max(max_degree, d);
    }

    long node_cursor = 0;
    for (long g = 0; g < num_graphs; ++g) {
        int n = graph_size[g];
        std::vector<FeatureVec> nf;
        nf.reserve(n);
        for (int i = 0; i < n; ++i) {
            long global = node_cursor + i;
            if (have_node_labels)
                nf.push_back(one_hot(ds.node_label_alphabet, node_labels[global]));
            else if (have_node_attrs)
                nf.push_back(node_attrs[global]);
            else
                nf.emplace_back();  // degree features assigned below
        }
        std::vector<std::pair<int, int>> edges;
        std::vector<FeatureVec> ef;
        for (const auto &[e, lab] : acc[g].label) {
            edges.push_back(e);
            ef.push_back(have_edge_labels ? one_hot(ds.edge_label_alphabet, lab) : FeatureVec{});
        }
        Graph graph(n, std::move(edges), std::move(nf), std::move(ef));
        if (!have_node_labels && !have_node_attrs)
            graph = assign_degree_features(graph, max_degree + 1);
        ds.graphs.push_back(std::move(graph));
        node_cursor += n;
    }

    // Class labels remapped to dense 0-based by ascending raw value.
    std::set<long> classes(raw_graph_labels.begin(), raw_graph_labels.end());
    std::map<long, int> class_index;
    for (long c : classes) class_index.emplace(c, static_cast<int>(class_index.size()));
    for (long raw : raw_graph_labels) ds.class_labels.push_back(class_index.at(raw));
    ds.num_classes = static_cast<int>(classes.size());
    return ds;
}

inline DatasetStats dataset_stats(const Dataset &d) {
    DatasetStats s;
    s.num_graphs = static_cast<int>(d.graphs.size());
    s.num_classes = d.num_classes;
    double nodes = 0, edges = 0;
    for (const auto &g : d.graphs) {
        nodes += g.node_count();
        edges += g.edge_count();
    }
    if (!d.graphs.empty()) {
        s.avg_nodes = nodes / s.num_graphs;
        s.avg_edges = edges / s.num_graphs;
    }
    if (!d.graphs.empty()) {
        s.node_feature_dim = d.graphs[0].node_feature_dim();
        s.edge_feature_dim = d.graphs[0].edge_feature_dim();
    }
    return s;
}

}  // namespace ewl
