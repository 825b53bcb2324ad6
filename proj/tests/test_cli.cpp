#include <doctest.h>

#include <json.hpp>

#include <fstream>

#include "herd/cli.hpp"
#include "test_util.hpp"

using herd::cli::RunConfig;
using herd::cli::RunResult;
using json = nlohmann::json;

namespace {

RunConfig base(const std::string& command, const std::string& file) {
    RunConfig config;
    config.command = command;
    config.input_path = file.empty() ? "" : testutil::data_path(file);
    return config;
}

json parse_output(const RunResult& result) {
    REQUIRE(result.exit_code == 0);
    return json::parse(result.output);
}

}  // namespace

TEST_CASE("cli table: star row matches the worked numbers") {
    RunConfig config = base("table", "star5.edges");
    config.undirected = true;
    const json out = parse_output(herd::cli::run(config));
    CHECK(out["N"] == 5);
    CHECK(out["L"] == 4);
    CHECK(out["directed"] == "U");
    CHECK(out["n_w"] == 1.0);
    CHECK(out["n_H"] == doctest::Approx(0.2));
    CHECK(out["n_c"] == doctest::Approx(0.6));
}

TEST_CASE("cli cover: dag herding nodes in original labels") {
    const json out = parse_output(herd::cli::run(base("cover", "dag4.edges")));
    CHECK(out["N_H"] == 2);
    CHECK(out["herding_nodes"] == json::array({"0", "1"}));
    CHECK(out["n_w"] == 2.0);
}

TEST_CASE("cli centrality: star summary carries the hub") {
    RunConfig config = base("centrality", "star5.edges");
    config.undirected = true;
    config.top_fraction = 0.2;
    const json out = parse_output(herd::cli::run(config));
    CHECK(out["herdability_centrality"]["argmin_nodes"] == json::array({"c"}));
    CHECK(out["herdability_centrality"]["centrality"][0] == 1.0);
    CHECK(std::abs(double(out["herdability_centrality"]["centrality"][1]) - 0.606) <= 0.02);
    CHECK(out["hub_degree"]["avg_degree_top"] == 4.0);
    CHECK(out["tolerances"]["kkt_residual"] == 1e-6);
    CHECK(out["version"] == "0.1.0");
}

TEST_CASE("cli centrality: csv table format") {
    RunConfig config = base("centrality", "star5.edges");
    config.undirected = true;
    config.format = "csv";
    const RunResult result = herd::cli::run(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.substr(0, 11) == "node,score\n");
    CHECK(result.output.find("c,1\n") != std::string::npos);
}

TEST_CASE("cli: byte-identical reruns, also across worker counts") {
    RunConfig config = base("centrality", "witness5.edges");
    const RunResult first = herd::cli::run(config);
    const RunResult second = herd::cli::run(config);
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);

    config.jobs = 1;
    const RunResult serial_pool = herd::cli::run(config);
    config.jobs = 2;
    const RunResult parallel_pool = herd::cli::run(config);
    // jobs is echoed in the config block; the numbers must agree exactly
    const json a = json::parse(serial_pool.output);
    const json b = json::parse(parallel_pool.output);
    CHECK(a["herdability_centrality"] == b["herdability_centrality"]);
}

TEST_CASE("cli check: unreached set in labels") {
    RunConfig config = base("check", "path3.edges");
    config.inputs_csv = "1";
    const json out = parse_output(herd::cli::run(config));
    CHECK(out["herdable"] == false);
    CHECK(out["unreached"] == json::array({"0"}));

    config.inputs_csv = "0";
    CHECK(parse_output(herd::cli::run(config))["herdable"] == true);
}

TEST_CASE("cli drivers: star needs three") {
    RunConfig config = base("drivers", "star5.edges");
    config.undirected = true;
    const json out = parse_output(herd::cli::run(config));
    CHECK(out["N_c"] == 3);
    CHECK(out["driver_nodes"].size() == 3);
}

TEST_CASE("cli compare: witness keeps indegree away from the best herder") {
    const json out = parse_output(herd::cli::run(base("compare", "witness5.edges")));
    bool saw_indegree = false;
    for (const auto& entry : out["overlap"]) {
        if (entry["measure"] != "indegree") continue;
        saw_indegree = true;
        CHECK(entry["argmax_nodes"] == json::array({"4"}));
        CHECK(double(entry["hc_max"]) < 0.9);
        CHECK(entry["attains_best"] == false);
    }
    CHECK(saw_indegree);
}

TEST_CASE("cli simulate: writes a trajectory table") {
    RunConfig config = base("simulate", "star5.edges");
    config.undirected = true;
    config.node_label = "c";
    config.out_path = "/tmp/herd_test_traj.csv";
    const json out = parse_output(herd::cli::run(config));
    CHECK(out["pass"] == true);
    CHECK(out["predicted_energy"] == doctest::Approx(12.0).epsilon(1e-9));

    std::ifstream csv(config.out_path);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,x_0,x_1,x_2,x_3,x_4,u");
}

TEST_CASE("cli synthetic generators replace the input file") {
    RunConfig config = base("table", "");
    config.synthetic = "erdos:30,0.1,7";
    const json out = parse_output(herd::cli::run(config));
    CHECK(out["N"] == 30);
    CHECK(out["directed"] == "D");

    config.synthetic = "scalefree:40,2,9";
    config.undirected = true;
    const json sf = parse_output(herd::cli::run(config));
    CHECK(sf["N"] == 40);
    CHECK(sf["directed"] == "U");
}

TEST_CASE("cli exit codes: input errors 1, numerical failures 2") {
    CHECK(herd::cli::run(base("cover", "missing_file.edges")).exit_code == 1);

    RunConfig bad_format = base("cover", "dag4.edges");
    bad_format.format = "csv";
    CHECK(herd::cli::run(bad_format).exit_code == 1);

    RunConfig bad_measure = base("centrality", "star5.edges");
    bad_measure.measure = "pagerank";
    CHECK(herd::cli::run(bad_measure).exit_code == 1);

    // herding from a node that cannot reach the rest: numerical failure path
    RunConfig infeasible = base("simulate", "path3.edges");
    infeasible.node_label = "2";
    const RunResult result = herd::cli::run(infeasible);
    CHECK(result.exit_code == 2);
    CHECK(result.error.find("numerical failure") != std::string::npos);
}
