#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "herd/graph.hpp"

namespace herd {

enum class Measure {
    kHerdability,
    kInDegree,
    kEccentricity,
    kCloseness,
    kBetweenness,
    kEigenvector,
    kKatz,
};

const char* measure_name(Measure m);

struct CentralityOptions {
    double rank_cutoff = -1.0;  // <0: default policy
    bool parallel = true;
    int jobs = 0;  // 0: runtime default
};

struct NodeFailure {
    int node = -1;
    std::string message;
};

// Energy-based node ranking: J_i is the minimum energy to reach the
// terminal orthant with node i as the sole input, Hc_i = min_k J_k / J_i.
struct HerdabilityCentralityReport {
    Eigen::VectorXd energy;      // J_i; NaN where the per-node solve failed
    Eigen::VectorXd centrality;  // Hc_i in (0, 1]; NaN where failed
    std::vector<int> argmin_nodes;
    double d = 0.0;
    std::string horizon_policy = "infinite";
    bool partial = false;
    std::vector<NodeFailure> failures;
};

struct KatzParams {
    double alpha = -1.0;  // <0: 0.85 / lambda_max(adjacency)
};

struct ClassicCentralityReport {
    std::string measure;
    Eigen::VectorXd scores;
    double katz_alpha = 0.0;  // populated for the Katz measure
};

struct OverlapEntry {
    std::string measure;
    std::vector<int> argmax_nodes;
    double hc_max = 0.0;  // highest Hc among the measure's argmax nodes
    double hc_min = 0.0;
    bool attains_best = false;  // argmax set contains an Hc = 1 node
};

struct OverlapReport {
    std::vector<OverlapEntry> entries;
    bool any_attains = false;
    double d = 0.0;
};

struct HubDegreeReport {
    double avg_degree_overall = 0.0;
    double avg_degree_top = 0.0;
    double top_fraction = 0.0;
    std::vector<int> top_nodes;  // sorted by Hc descending, ties by id
};

// Minimum herding energy for one candidate node (full pipeline:
// dynamics -> Gramian -> spectrum -> orthant QP).
double herding_energy(const Graph& g, int node, double d, double rank_cutoff = -1.0);

// Requires a strongly connected graph (callers extract the largest SCC
// first). Per-node solves run in an OpenMP worker pool; per-node failures
// are recorded and mark the report partial instead of aborting the sweep.
HerdabilityCentralityReport herdability_centrality(const Graph& g, double d,
                                                   const CentralityOptions& opts = {});

// Serial reference implementation; identical output, kept for tests and
// benchmarks against the parallel path.
HerdabilityCentralityReport herdability_centrality_serial(const Graph& g, double d,
                                                          double rank_cutoff = -1.0);

// Spectral radius of the (unweighted) adjacency matrix; used for Katz
// parameter validation and defaults.
double adjacency_spectral_radius(const Graph& g);

ClassicCentralityReport classic_centrality(const Graph& g, Measure measure,
                                           KatzParams params = {});

OverlapReport overlap_report(const Graph& g, double d, KatzParams params = {},
                             const CentralityOptions& opts = {});
OverlapReport overlap_report(const Graph& g, const HerdabilityCentralityReport& hc,
                             KatzParams params = {});

HubDegreeReport hub_degree_report(const Graph& g, double d, double top_fraction = 0.10,
                                  const CentralityOptions& opts = {});
HubDegreeReport hub_degree_report(const Graph& g, const HerdabilityCentralityReport& hc,
                                  double top_fraction = 0.10);

}  // namespace herd
