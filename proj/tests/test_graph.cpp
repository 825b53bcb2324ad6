#include <doctest.h>

#include <algorithm>
#include <set>

#include "herd/graph.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace herd;

TEST_CASE("parse: directed two-edge path") {
    const Graph g = parse_edge_list("0 1\n1 2\n", true);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.directed());
}

TEST_CASE("parse: undirected labeled edge stores both orientations") {
    const Graph g = parse_edge_list("a b 2.0\n", false);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    REQUIRE(g.out_neighbors(0).size() == 1);
    REQUIRE(g.out_neighbors(1).size() == 1);
    CHECK(g.out_neighbors(0)[0] == std::pair<int, double>{1, 2.0});
    CHECK(g.out_neighbors(1)[0] == std::pair<int, double>{0, 2.0});
    CHECK(g.label(0) == "a");
    CHECK(g.label(1) == "b");
}

TEST_CASE("parse: rejections name the line") {
    CHECK_THROWS_WITH_AS(parse_edge_list("0 1 -1\n", true), doctest::Contains("line 1"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_edge_list("0 1\njunk\n", true), doctest::Contains("line 2"),
                         ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 1 0\n", true), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 1 x\n", true), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 1 1 1\n", true), ParseError);
}

TEST_CASE("parse: comments, blank lines, self-loops, duplicates") {
    std::vector<std::string> warnings;
    const Graph g = parse_edge_list("# header\n\na a\na b\na b 2\n", true, &warnings);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.out_neighbors(0)[0].second == 3.0);  // 1 + 2 summed
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].find("self-loop") != std::string::npos);
    CHECK(warnings[1].find("duplicate") != std::string::npos);
}

TEST_CASE("parse: CRLF endings, UTF-8 labels, scientific weights") {
    const Graph crlf = parse_edge_list("0 1\r\n1 2\r\n", true);
    CHECK(crlf.node_count() == 3);
    CHECK(crlf.label(2) == "2");

    const Graph utf8 = parse_edge_list("\xce\xb1 \xce\xb2 2\n", false);
    CHECK(utf8.node_count() == 2);
    CHECK(utf8.label(0) == "\xce\xb1");

    const Graph sci = parse_edge_list("0 1 2.5e-1\n", true);
    CHECK(sci.edges()[0].weight == 0.25);
}

TEST_CASE("serialize: deterministic and a parse fixed point") {
    const Graph g = parse_edge_list("b c 2.5\na b\nc a\n", true);
    const std::string once = serialize_edge_list(g);
    const std::string twice = serialize_edge_list(parse_edge_list(once, true));
    CHECK(once == twice);
}

TEST_CASE("serialize/parse fixed point on random graphs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = testutil::random_digraph(1 + int(seed % 12), 0.3, seed);
        const std::string once = serialize_edge_list(g);
        const std::string twice = serialize_edge_list(parse_edge_list(once, true));
        CAPTURE(seed);
        CHECK(once == twice);
    }
}

TEST_CASE("scc: directed 3-cycle is one component") {
    const SccDag dag = scc_decompose(testutil::cycle3());
    REQUIRE(dag.components.size() == 1);
    CHECK(dag.components[0] == std::vector<int>{0, 1, 2});
    CHECK(dag.roots == std::vector<int>{0});
}

TEST_CASE("scc: path decomposes into singletons with one root") {
    const SccDag dag = scc_decompose(testutil::path3());
    REQUIRE(dag.components.size() == 3);
    REQUIRE(dag.roots.size() == 1);
    CHECK(dag.components[dag.roots[0]] == std::vector<int>{0});
}

TEST_CASE("scc: two in-degree-zero singles give two roots") {
    const Graph g = parse_edge_list("0 2\n1 2\n2 3\n", true);
    const SccDag dag = scc_decompose(g);
    REQUIRE(dag.components.size() == 4);
    REQUIRE(dag.roots.size() == 2);
    std::set<std::string> root_labels;
    for (int r : dag.roots) root_labels.insert(g.label(dag.components[r][0]));
    CHECK(root_labels == std::set<std::string>{"0", "1"});
}

TEST_CASE("scc: condensation is acyclic and topologically ordered") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const Graph g = testutil::random_digraph(2 + int(seed % 14), 0.25, seed);
        const SccDag dag = scc_decompose(g);
        // components partition the nodes
        std::vector<int> seen(g.node_count(), 0);
        for (const auto& comp : dag.components)
            for (int v : comp) seen[v]++;
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
        // ids are topological, which certifies acyclicity
        for (const auto& [from, to] : dag.dag_edges) {
            CAPTURE(seed);
            CHECK(from < to);
        }
        // roots are exactly the zero-in-degree components
        std::set<int> with_in;
        for (const auto& [from, to] : dag.dag_edges) with_in.insert(to);
        for (int c = 0; c < int(dag.components.size()); ++c)
            CHECK(std::binary_search(dag.roots.begin(), dag.roots.end(), c) ==
                  (with_in.count(c) == 0));
    }
}

TEST_CASE("scc equals weak components on undirected graphs") {
    for (std::uint64_t seed = 7; seed < 27; ++seed) {
        const Graph g = herd::erdos_renyi(2 + int(seed % 10), 0.3, seed, /*directed=*/false);
        CHECK(scc_decompose(g).components.size() ==
              weakly_connected_components(g).size());
    }
}

TEST_CASE("roots reach everything") {
    for (std::uint64_t seed = 500; seed < 560; ++seed) {
        const Graph g = testutil::random_digraph(1 + int(seed % 15), 0.2, seed);
        const SccDag dag = scc_decompose(g);
        std::vector<int> reps;
        for (int r : dag.roots) reps.push_back(dag.components[r][0]);
        CAPTURE(seed);
        CHECK(reachable_from(g, reps).size() == size_t(g.node_count()));
    }
}

TEST_CASE("weak components: examples") {
    CHECK(weakly_connected_components(parse_edge_list("0 1\n2 3\n", true)).size() == 2);
    CHECK(weakly_connected_components(testutil::star5()).size() == 1);
    const Graph isolated = Graph::from_edges(4, {}, true);
    CHECK(weakly_connected_components(isolated).size() == 4);
}

TEST_CASE("reachable_from: examples and errors") {
    const Graph path = testutil::path3();
    CHECK(reachable_from(path, {0}) == std::vector<int>{0, 1, 2});
    CHECK(reachable_from(path, {2}) == std::vector<int>{2});
    CHECK(reachable_from(testutil::cycle3(), {1}) == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(reachable_from(path, {}), std::invalid_argument);
    CHECK_THROWS_AS(reachable_from(path, {7}), std::invalid_argument);
}

TEST_CASE("degrees: star, path, isolated node") {
    const DegreeReport star = degrees(testutil::star5());
    CHECK(star.total[0] == 4);
    CHECK(star.total[1] == 1);

    const DegreeReport path = degrees(testutil::path3());
    CHECK(path.in[1] == 1);
    CHECK(path.out[1] == 1);
    CHECK(path.total[1] == 2);

    const DegreeReport lonely = degrees(Graph::from_edges(1, {}, true));
    CHECK(lonely.in[0] == 0);
    CHECK(lonely.out[0] == 0);
    CHECK(lonely.total[0] == 0);
}

TEST_CASE("degrees ignore weights and duplicate merging") {
    const Graph g = parse_edge_list("0 1 5\n0 1 2\n0 2 0.5\n", true);
    const DegreeReport deg = degrees(g);
    CHECK(deg.out[0] == 2);
    CHECK(deg.in[1] == 1);
}

TEST_CASE("induced subgraph keeps labels and weights") {
    const Graph g = parse_edge_list("a b 2\nb c\nc a 3\n", true);
    const Graph sub = induced_subgraph(g, {0, 2});
    CHECK(sub.node_count() == 2);
    CHECK(sub.edge_count() == 1);
    CHECK(sub.label(0) == "a");
    CHECK(sub.label(1) == "c");
    CHECK(sub.edges()[0].weight == 3.0);
}
