#pragma once

#include <cstdint>
#include <string>

namespace herd::cli {

// One fully-resolved invocation. Defaults here are the tool defaults; every
// field is echoed into the report metadata.
struct RunConfig {
    std::string command;     // check|cover|centrality|classic|compare|drivers|simulate|table
    std::string input_path;  // edge-list file; empty when synthetic is set
    std::string synthetic;   // "erdos:n,p,seed" or "scalefree:n,m,seed"
    bool undirected = false;
    double d = 1.0;
    std::string measure = "hc";
    double katz_alpha = -1.0;    // <0: 0.85 / lambda_max
    double top_fraction = 0.10;
    std::string tie_break = "smallest";  // smallest|outdegree|degree
    double rank_cutoff = -1.0;   // <0: default policy
    std::string format = "json"; // json|csv
    std::uint64_t seed = 0;      // default seed when the synthetic string omits one
    int jobs = 0;                // 0: available parallelism
    std::string inputs_csv;      // check: comma-separated node labels
    std::string node_label;      // simulate: herding node label
    double t_f = -1.0;           // simulate: <0 picks 40/|abscissa|
    double step = -1.0;          // simulate: <0 picks t_f/4000
    std::string out_path;        // simulate: trajectory CSV destination
};

// Exit code 0 on success, 1 on input errors, 2 on numerical failures.
struct RunResult {
    int exit_code = 0;
    std::string output;  // serialized report (stdout payload)
    std::string error;   // diagnostic (stderr payload), empty on success
};

RunResult run(const RunConfig& config);

}  // namespace herd::cli
