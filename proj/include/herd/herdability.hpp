#pragma once

#include <Eigen/Core>
#include <vector>

#include "herd/graph.hpp"

namespace herd {

// Representative choice inside a root component. Any choice is valid;
// smallest id keeps results deterministic.
enum class TieBreak { kSmallestId, kMaxOutDegree, kMaxTotalDegree };

// Minimal node set whose inputs make the system herdable: one node per
// root component of the condensation.
struct HerdingCover {
    std::vector<int> herding_nodes;  // sorted ascending
    int herding_count = 0;           // N_H, equals root_count
    int root_count = 0;              // N_r
    int weak_component_count = 0;    // N_w
    double herding_fraction = 0.0;   // N_H / n
    double per_weak_component = 0.0; // N_H / N_w
};

struct HerdabilityCheck {
    bool herdable = false;
    std::vector<int> unreached;  // sorted; empty iff herdable
};

// Input connectability test: every node reachable from the input set.
// Throws std::invalid_argument on an empty input set.
HerdabilityCheck is_herdable(const Graph& g, const std::vector<int>& input_nodes);

HerdingCover herding_cover(const Graph& g, TieBreak tie_break = TieBreak::kSmallestId);

// n x N_H matrix of indicator columns, one per herding node (cover order).
Eigen::MatrixXd build_input_matrix(const HerdingCover& cover, int node_count);

}  // namespace herd
