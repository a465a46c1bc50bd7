#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include "qls/graph.hpp"
#include "test_oracles.hpp"

using namespace qls;

TEST_CASE("load_edge_list collapses duplicate edges") {
    const LoadedGraph loaded = load_edge_list("0 1\n1 2\n0 1\n");
    CHECK(loaded.graph.vertex_count() == 3);
    CHECK(loaded.graph.edge_count() == 2);
    CHECK(loaded.graph.degree(0) == 1);
    CHECK(loaded.graph.degree(1) == 2);
    CHECK(loaded.graph.degree(2) == 1);
    CHECK(loaded.duplicates_collapsed == 1);
}

TEST_CASE("load_edge_list handles labels and comments") {
    const LoadedGraph loaded = load_edge_list("a b\n# comment\nb c\nc a\n");
    CHECK(loaded.graph.vertex_count() == 3);
    CHECK(loaded.graph.edge_count() == 3);
    CHECK(loaded.labels == std::vector<std::string>{"a", "b", "c"});
    CHECK(loaded.graph.has_edge(0, 1));
    CHECK(loaded.graph.has_edge(1, 2));
    CHECK(loaded.graph.has_edge(2, 0));
}

TEST_CASE("load_edge_list rejects bad input") {
    CHECK_THROWS_AS(load_edge_list("0 0\n"), SelfLoopError);
    CHECK_THROWS_AS(load_edge_list("0 1 2\n"), MalformedLineError);
    CHECK_THROWS_AS(load_edge_list("justone\n"), MalformedLineError);
    CHECK_THROWS_AS(load_edge_list("# nothing\n\n"), EmptyGraphError);
    try {
        load_edge_list("0 1\noops\n");
        FAIL("expected MalformedLineError");
    } catch (const MalformedLineError& e) {
        CHECK(e.lineno == 2);
    }
}

TEST_CASE("load_edge_list keeps the label-keyed edge set under line permutations") {
    const std::string lines[] = {"a b", "b c", "c d", "d a", "a c"};
    std::vector<int> order{0, 1, 2, 3, 4};
    auto edge_set_by_label = [](const LoadedGraph& lg) {
        std::set<std::pair<std::string, std::string>> edges;
        for (auto [u, v] : lg.graph.edges()) {
            std::string lu = lg.labels[static_cast<std::size_t>(u)];
            std::string lv = lg.labels[static_cast<std::size_t>(v)];
            if (lv < lu) std::swap(lu, lv);
            edges.emplace(lu, lv);
        }
        return edges;
    };
    std::string base_text;
    for (int i : order) base_text += lines[i] + std::string("\n");
    const auto base = edge_set_by_label(load_edge_list(base_text));
    for (int trial = 0; trial < 10; ++trial) {
        std::next_permutation(order.begin(), order.end());
        std::string text;
        for (int i : order) text += lines[i] + std::string("\n");
        CHECK(edge_set_by_label(load_edge_list(text)) == base);
    }
}

TEST_CASE("modularity coefficients on the barbell graph") {
    const Graph g = oracle::barbell();
    CHECK(g.edge_count() == 7);
    CHECK_THAT(g.modularity_coefficient(2, 3), Catch::Matchers::WithinAbs(5.0 / 14.0, 1e-15));
    CHECK_THAT(g.modularity_coefficient(0, 4), Catch::Matchers::WithinAbs(-2.0 / 7.0, 1e-15));
    CHECK_THAT(g.modularity_coefficient(0, 0), Catch::Matchers::WithinAbs(-4.0 / 14.0, 1e-15));
}

TEST_CASE("isolated vertex has an all-zero modularity row") {
    const Graph g = Graph::from_edges(3, {{0, 1}});
    for (int j = 0; j < 3; ++j) CHECK(g.modularity_coefficient(2, j) == 0.0);
}

TEST_CASE("modularity-matrix rows sum to zero") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = oracle::gnp(3 + static_cast<int>(seed % 18), 0.3, seed);
        for (int i = 0; i < g.vertex_count(); ++i) {
            double row = 0.0;
            for (int j = 0; j < g.vertex_count(); ++j) row += g.modularity_coefficient(i, j);
            CHECK_THAT(row, Catch::Matchers::WithinAbs(0.0, 1e-9));
        }
    }
}

TEST_CASE("planted partition at the probability extremes") {
    const Graph two_triangles = generate_planted_partition(6, 1.0, 0.0, 7);
    CHECK(two_triangles.vertex_count() == 6);
    CHECK(two_triangles.edge_count() == 6);
    CHECK(two_triangles.has_edge(0, 1));
    CHECK(two_triangles.has_edge(3, 5));
    CHECK(!two_triangles.has_edge(2, 3));
    // the planted split is the best 2-partition, at modularity 1/2
    CHECK_THAT(oracle::best_modularity(two_triangles).first, Catch::Matchers::WithinAbs(0.5, 1e-12));

    const Graph k4 = generate_planted_partition(4, 1.0, 1.0, 3);
    CHECK(k4.edge_count() == 6);
}

TEST_CASE("planted partition validates arguments") {
    CHECK_THROWS_AS(generate_planted_partition(6, 0.2, 0.5, 0), InvalidProbabilityError);
    CHECK_THROWS_AS(generate_planted_partition(6, 1.2, 0.5, 0), InvalidProbabilityError);
    CHECK_THROWS_AS(generate_planted_partition(5, 0.5, 0.1, 0), OddNError);
    CHECK_THROWS_AS(generate_planted_partition(6, 0.0, 0.0, 0), EmptyGraphError);
}

TEST_CASE("planted partition is deterministic per seed") {
    const Graph a = generate_planted_partition(40, 0.3, 0.05, 123);
    const Graph b = generate_planted_partition(40, 0.3, 0.05, 123);
    const Graph c = generate_planted_partition(40, 0.3, 0.05, 124);
    CHECK(a.edges() == b.edges());
    CHECK(a.edges() != c.edges());
}

TEST_CASE("planted partition edge count tracks expectation") {
    // n=500, p_in=0.1, p_out=0.01: E[m] = 0.1*2*C(250,2) + 0.01*250^2 = 6850
    double total = 0.0;
    const int trials = 20;
    for (std::uint64_t seed = 0; seed < trials; ++seed)
        total += static_cast<double>(generate_planted_partition(500, 0.1, 0.01, seed).edge_count());
    const double mean = total / trials;
    CHECK(mean > 6850.0 * 0.95);
    CHECK(mean < 6850.0 * 1.05);
}

TEST_CASE("save_edge_list round-trips through load_edge_list") {
    const Graph g = generate_planted_partition(20, 0.4, 0.1, 5);
    std::ostringstream out;
    save_edge_list(out, g, "planted-partition n=20 p_in=0.4 p_out=0.1 seed=5");
    const LoadedGraph reloaded = load_edge_list(out.str());
    CHECK(reloaded.graph.edges() == g.edges());
}

TEST_CASE("from_edges rejects empty graphs and self loops") {
    CHECK_THROWS_AS(Graph::from_edges(3, {}), EmptyGraphError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), SelfLoopError);
}
