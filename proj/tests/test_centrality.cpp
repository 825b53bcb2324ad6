#include <doctest.h>

#include <cmath>
#include <fstream>

#include "herd/centrality.hpp"
#include "herd/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace herd;

TEST_CASE("herdability centrality: the star hub wins, leaves land on 0.606") {
    const HerdabilityCentralityReport rep = herdability_centrality(testutil::star5(), 1.0);
    CHECK(rep.centrality(0) == 1.0);
    CHECK(rep.argmin_nodes == std::vector<int>{0});
    for (int leaf = 1; leaf < 5; ++leaf)
        CHECK(std::abs(rep.centrality(leaf) - 0.606) <= 0.02);
    // the four leaves sit in one automorphism orbit
    for (int leaf = 2; leaf < 5; ++leaf)
        CHECK(std::abs(rep.energy(leaf) - rep.energy(1)) <= 1e-6 * rep.energy(1));
    CHECK_FALSE(rep.partial);
}

TEST_CASE("herdability centrality: single node and symmetric 2-path") {
    const Graph lonely = Graph::from_edges(1, {}, true);
    const HerdabilityCentralityReport single = herdability_centrality(lonely, 2.0);
    CHECK(single.centrality(0) == 1.0);
    CHECK(single.energy(0) == doctest::Approx(2.0 * 2.0 * 2.0).epsilon(1e-10));  // 2 d^2

    const HerdabilityCentralityReport pair =
        herdability_centrality(testutil::undirected_path2(), 1.0);
    CHECK(pair.centrality(0) == 1.0);
    CHECK(pair.centrality(1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("herdability centrality: d-invariance and score bounds") {
    const Graph g = random_strongly_connected(6, 0.3, 321);
    const HerdabilityCentralityReport at1 = herdability_centrality(g, 1.0);
    const HerdabilityCentralityReport at10 = herdability_centrality(g, 10.0);
    CHECK((at1.centrality - at10.centrality).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(at1.centrality.minCoeff() > 0.0);
    CHECK(at1.centrality.maxCoeff() == 1.0);
    CHECK(at1.energy.minCoeff() > 0.0);
}

TEST_CASE("herdability centrality: an impossible rank cutoff fails loudly") {
    // cutoff above 1 strips the entire spectrum, so every per-node solve
    // reports infeasibility and the sweep cannot produce a ranking
    CHECK_THROWS_AS(herdability_centrality_serial(testutil::star5(), 1.0, 2.0), NumericError);
}

TEST_CASE("eigenvector centrality rejects graphs that are not strongly connected") {
    CHECK_THROWS_AS(classic_centrality(testutil::path3(), Measure::kEigenvector),
                    std::invalid_argument);
}

TEST_CASE("herdability centrality: rejects inputs that are not strongly connected") {
    CHECK_THROWS_WITH_AS(herdability_centrality(testutil::path3(), 1.0),
                         doctest::Contains("strongly connected"), std::invalid_argument);
}

TEST_CASE("parallel sweep matches the serial reference bit for bit") {
    const Graph g = random_strongly_connected(14, 0.2, 777);
    const HerdabilityCentralityReport serial = herdability_centrality_serial(g, 1.0);
    CentralityOptions opts;
    opts.jobs = 2;
    const HerdabilityCentralityReport parallel = herdability_centrality(g, 1.0, opts);
    CHECK((serial.energy - parallel.energy).cwiseAbs().maxCoeff() == 0.0);
    CHECK((serial.centrality - parallel.centrality).cwiseAbs().maxCoeff() == 0.0);
    CHECK(serial.argmin_nodes == parallel.argmin_nodes);
}

TEST_CASE("classic centrality: star worked values") {
    const Graph star = testutil::star5();
    CHECK(classic_centrality(star, Measure::kBetweenness).scores(0) == doctest::Approx(6.0));
    CHECK(classic_centrality(star, Measure::kBetweenness).scores(1) == doctest::Approx(0.0));
    CHECK(classic_centrality(star, Measure::kInDegree).scores(0) == 4.0);
    CHECK(classic_centrality(star, Measure::kInDegree).scores(1) == 1.0);
    CHECK(classic_centrality(star, Measure::kEccentricity).scores(0) == 1.0);
    CHECK(classic_centrality(star, Measure::kEccentricity).scores(1) == 2.0);
    CHECK(classic_centrality(star, Measure::kCloseness).scores(0) == doctest::Approx(4.0));
    CHECK(classic_centrality(star, Measure::kCloseness).scores(1) == doctest::Approx(2.5));
    // adjacency Perron pair: lambda = 2, v = (2,1,1,1,1)/sqrt(8)
    const Eigen::VectorXd ev = classic_centrality(star, Measure::kEigenvector).scores;
    CHECK(ev(0) == doctest::Approx(2.0 / std::sqrt(8.0)).epsilon(1e-9));
    CHECK(ev(1) == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-9));
}

TEST_CASE("classic centrality: vertex-transitive cycle is flat") {
    const Graph cyc = testutil::cycle3();
    for (Measure m : {Measure::kInDegree, Measure::kEccentricity, Measure::kCloseness,
                      Measure::kBetweenness, Measure::kEigenvector, Measure::kKatz}) {
        const Eigen::VectorXd s = classic_centrality(cyc, m).scores;
        CAPTURE(measure_name(m));
        CHECK((s.array() - s(0)).abs().maxCoeff() <= 1e-9 * std::max(1.0, std::abs(s(0))));
    }
}

TEST_CASE("classic centrality: path-based measures match Floyd-Warshall enumeration") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const bool directed = seed % 2;
        const int n = 5 + int(seed % 36);
        const Graph g = directed ? testutil::random_digraph(n, 0.15, seed)
                                 : herd::erdos_renyi(n, 0.15, seed, false);
        CAPTURE(seed);
        CHECK((classic_centrality(g, Measure::kBetweenness).scores - oracle::betweenness(g))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-9);
        CHECK((classic_centrality(g, Measure::kCloseness).scores - oracle::closeness(g))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10);
        CHECK((classic_centrality(g, Measure::kEccentricity).scores - oracle::eccentricity(g))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
}

TEST_CASE("katz: solve equals 1 + truncated series, parameter validation works") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Graph g = random_strongly_connected(6 + int(seed % 10), 0.25, seed * 5 + 2);
        const double rho = adjacency_spectral_radius(g);
        const double alpha = 0.5 / rho;  // fast geometric decay for the 50-term check
        const ClassicCentralityReport rep =
            classic_centrality(g, Measure::kKatz, KatzParams{alpha});
        const Eigen::VectorXd series = oracle::katz_series(g, alpha, 50);
        CAPTURE(seed);
        CHECK((rep.scores - Eigen::VectorXd::Ones(g.node_count()) - series).cwiseAbs().maxCoeff() <=
              1e-8);
        CHECK_THROWS_WITH_AS(
            classic_centrality(g, Measure::kKatz, KatzParams{1.5 / rho}),
            doctest::Contains("lambda_max"), std::invalid_argument);
    }
}

TEST_CASE("overlap report: star fully overlaps, cycle trivially overlaps") {
    const OverlapReport star = overlap_report(testutil::star5(), 1.0);
    for (const OverlapEntry& e : star.entries) {
        CAPTURE(e.measure);
        if (e.measure == "eccentricity") {
            // leaves maximize eccentricity and carry the low value
            CHECK(e.hc_max == doctest::Approx(0.606).epsilon(0.04));
            CHECK_FALSE(e.attains_best);
        } else {
            CHECK(e.argmax_nodes == std::vector<int>{0});
            CHECK(e.attains_best);
        }
    }
    CHECK(star.any_attains);

    const OverlapReport cyc = overlap_report(testutil::cycle3(), 1.0);
    for (const OverlapEntry& e : cyc.entries) {
        CHECK(e.argmax_nodes == std::vector<int>{0, 1, 2});
        CHECK(e.attains_best);
    }
}

TEST_CASE("overlap witness: high in-degree can herd poorly (frozen fixture)") {
    std::ifstream file(testutil::data_path("witness5.edges"));
    REQUIRE(file.good());
    const Graph g = parse_edge_list(file, /*directed=*/true);
    REQUIRE(g.node_count() == 5);

    const ClassicCentralityReport indeg = classic_centrality(g, Measure::kInDegree);
    int argmax = 0;
    indeg.scores.maxCoeff(&argmax);
    CHECK(g.label(argmax) == "4");

    const HerdabilityCentralityReport hc = herdability_centrality(g, 1.0);
    CHECK(hc.centrality(argmax) < 0.9);
    // values frozen from an independent convex-programming solve
    CHECK(hc.centrality(g.node_by_label("1")) == 1.0);
    CHECK(hc.centrality(g.node_by_label("4")) == doctest::Approx(0.3702).epsilon(5e-3));
    CHECK(hc.centrality(g.node_by_label("2")) == doctest::Approx(0.7387).epsilon(5e-3));
}

TEST_CASE("hub degree report: star and regular cycle") {
    const HubDegreeReport star = hub_degree_report(testutil::star5(), 1.0, 0.2);
    CHECK(star.top_nodes == std::vector<int>{0});
    CHECK(star.avg_degree_top == doctest::Approx(4.0));
    CHECK(star.avg_degree_overall == doctest::Approx(1.6));

    const HubDegreeReport cyc = hub_degree_report(testutil::cycle3(), 1.0, 0.4);
    CHECK(cyc.avg_degree_top == doctest::Approx(cyc.avg_degree_overall));

    CHECK_THROWS_AS(hub_degree_report(testutil::cycle3(), 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("hub trend: the most herdable nodes skew to high degree on scale-free graphs") {
    // a statistic across seeds, not a per-instance assertion
    int top_heavier = 0;
    const int runs = 20;
    for (int i = 0; i < runs; ++i) {
        const Graph g = herd::scale_free(30, 2, 4200 + i, /*directed=*/true);
        const HubDegreeReport rep = hub_degree_report(g, 1.0, 0.10);
        if (rep.avg_degree_top >= rep.avg_degree_overall) ++top_heavier;
    }
    CHECK(top_heavier >= 15);
}

TEST_CASE("automorphism orbits get equal energies") {
    // complete graph on 4 nodes: one orbit
    const Graph complete = parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n", false);
    const HerdabilityCentralityReport rep = herdability_centrality(complete, 1.0);
    for (int i = 1; i < 4; ++i)
        CHECK(std::abs(rep.energy(i) - rep.energy(0)) <= 1e-6 * rep.energy(0));
    // ties all reach exactly 1 through the shared minimum
    CHECK(rep.centrality.maxCoeff() == 1.0);
}
