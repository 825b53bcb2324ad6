#pragma once

#include <vector>

#include "herd/graph.hpp"

namespace herd {

// Driver-node baseline from the maximum-matching characterization of
// structural controllability: unmatched in-copies are driver nodes, plus
// one attachment node for every root component the matching covers
// completely (accessibility).
struct DriverNodeResult {
    int driver_count = 0;        // N_c
    double driver_fraction = 0;  // N_c / n
    int matching_size = 0;
    std::vector<int> unmatched;  // in-copies left unmatched; driver nodes
    std::vector<int> matched_root_reps;  // one pick per fully matched root SCC
};

DriverNodeResult driver_node_count(const Graph& g);

}  // namespace herd
