#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>

#include "ewl/tu_dataset.hpp"

using namespace ewl;
namespace fs = std::filesystem;

namespace {

struct Fixture {
    fs::path dir;

    Fixture() {
        dir = fs::temp_directory_path() / ("ewl_tu_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Fixture() { fs::remove_all(dir); }

    void write(const std::string &suffix, const std::string &content) const {
        std::ofstream out(dir / ("T" + suffix));
        out << content;
    }
};

// Two triangles, labels {3,7}, both edge directions listed as TU files do.
void write_two_triangles(const Fixture &fx, bool conflict = false) {
    fx.write("_A.txt",
             "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n"
             "4, 5\n5, 4\n5, 6\n6, 5\n4, 6\n6, 4\n");
    fx.write("_graph_indicator.txt", "1\n1\n1\n2\n2\n2\n");
    fx.write("_graph_labels.txt", "1\n-1\n");
    fx.write("_node_labels.txt", "3\n3\n7\n3\n7\n7\n");
    std::string second = conflict ? "9" : "7";
    fx.write("_edge_labels.txt", "3\n3\n7\n" + second + "\n3\n3\n7\n7\n3\n3\n7\n7\n");
}

}  // namespace

TEST_CASE("two-graph fixture parses with sorted one-hot alphabets") {
    Fixture fx;
    write_two_triangles(fx);
    Dataset ds = parse_tu_dataset(fx.dir, "T");
    REQUIRE(ds.graphs.size() == 2);
    REQUIRE(ds.num_classes == 2);
    // raw labels {1,-1} remapped ascending: -1 -> 0, 1 -> 1
    REQUIRE(ds.class_labels == std::vector<int>{1, 0});
    REQUIRE(ds.node_label_alphabet == std::vector<long>{3, 7});
    REQUIRE(ds.edge_label_alphabet == std::vector<long>{3, 7});
    const Graph &g0 = ds.graphs[0];
    REQUIRE(g0.node_count() == 3);
    REQUIRE(g0.edge_count() == 3);
    REQUIRE(g0.node_feature_dim() == 2);
    REQUIRE(g0.edge_feature_dim() == 2);
    REQUIRE(g0.node_feature(0) == FeatureVec{1.0, 0.0});  // label 3
    REQUIRE(g0.node_feature(2) == FeatureVec{0.0, 1.0});  // label 7 -> (0,1)
}

TEST_CASE("one-hot vectors have exactly one coordinate set") {
    Fixture fx;
    write_two_triangles(fx);
    Dataset ds = parse_tu_dataset(fx.dir, "T");
    for (const auto &g : ds.graphs)
        for (int i = 0; i < g.node_count(); ++i) {
            double sum = 0;
            for (double v : g.node_feature(i)) {
                REQUIRE((v == 0.0 || v == 1.0));
                sum += v;
            }
            REQUIRE(sum == 1.0);
        }
}

TEST_CASE("parsing is deterministic") {
    Fixture fx;
    write_two_triangles(fx);
    Dataset a = parse_tu_dataset(fx.dir, "T");
    Dataset b = parse_tu_dataset(fx.dir, "T");
    REQUIRE(a.graphs.size() == b.graphs.size());
    for (size_t i = 0; i < a.graphs.size(); ++i)
        REQUIRE(canonical_encoding(a.graphs[i]) == canonical_encoding(b.graphs[i]));
}

TEST_CASE("missing mandatory file is an error") {
    Fixture fx;
    write_two_triangles(fx);
    fs::remove(fx.dir / "T_graph_labels.txt");
    REQUIRE_THROWS_WITH(parse_tu_dataset(fx.dir, "T"),
                        Catch::Matchers::ContainsSubstring("missing mandatory file"));
}

TEST_CASE("conflicting directed edge labels are an error") {
    Fixture fx;
    write_two_triangles(fx, /*conflict=*/true);
    REQUIRE_THROWS_WITH(parse_tu_dataset(fx.dir, "T"),
                        Catch::Matchers::ContainsSubstring("conflicting edge labels"));
}

TEST_CASE("edge label count mismatch is an error") {
    Fixture fx;
    write_two_triangles(fx);
    fx.write("_edge_labels.txt", "3\n3\n");
    REQUIRE_THROWS_WITH(parse_tu_dataset(fx.dir, "T"),
                        Catch::Matchers::ContainsSubstring("edge label count"));
}

TEST_CASE("non-contiguous graph indicator is an error") {
    Fixture fx;
    write_two_triangles(fx);
    fx.write("_graph_indicator.txt", "1\n1\n2\n1\n2\n2\n");
    REQUIRE_THROWS_WITH(parse_tu_dataset(fx.dir, "T"),
                        Catch::Matchers::ContainsSubstring("not contiguous"));
}

TEST_CASE("graphs without node labels get degree features") {
    Fixture fx;
    write_two_triangles(fx);
    fs::remove(fx.dir / "T_node_labels.txt");
    Dataset ds = parse_tu_dataset(fx.dir, "T");
    // triangle: every node degree 2, dataset max degree 2 -> dim 3
    REQUIRE(ds.graphs[0].node_feature_dim() == 3);
    REQUIRE(ds.graphs[0].node_feature(0) == FeatureVec{0.0, 0.0, 1.0});
}

TEST_CASE("stats of a single triangle dataset") {
    Fixture fx;
    write_two_triangles(fx);
    Dataset ds = parse_tu_dataset(fx.dir, "T");
    DatasetStats s = dataset_stats(ds);
    REQUIRE(s.num_graphs == 2);
    REQUIRE(s.num_classes == 2);
    REQUIRE(s.avg_nodes == Catch::Approx(3.0));
    REQUIRE(s.avg_edges == Catch::Approx(3.0));
    REQUIRE(s.node_feature_dim == 2);
    REQUIRE(s.edge_feature_dim == 2);
}
