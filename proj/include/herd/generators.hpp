#pragma once

#include <cstdint>

#include "herd/graph.hpp"

namespace herd {

// Deterministic synthetic graphs for property-test corpora. All draws go
// through explicit bit manipulation of a mt19937_64 stream so results are
// stable across platforms.

// G(n, p): each (ordered, when directed) pair independently with
// probability p.
Graph erdos_renyi(int n, double p, std::uint64_t seed, bool directed);

// Preferential attachment: each new node attaches to m distinct existing
// nodes with probability proportional to degree. Directed graphs carry both
// orientations of every generated edge.
Graph scale_free(int n, int m, std::uint64_t seed, bool directed);

// Random permutation cycle plus extra arcs with probability extra_p;
// strongly connected by construction.
Graph random_strongly_connected(int n, double extra_p, std::uint64_t seed);

}  // namespace herd
