#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "herd/errors.hpp"

namespace herd {

struct Edge {
    int src = 0;
    int dst = 0;
    double weight = 1.0;
};

// Immutable directed or undirected weighted graph with contiguous node ids
// 0..n-1. Edge weights are strictly positive; self-loops and duplicate edges
// are resolved at construction (dropped resp. summed, with a warning).
// Undirected graphs store one canonical edge per pair and expose both arc
// orientations through the adjacency lists.
class Graph {
public:
    Graph() = default;

    // edges may arrive in any order and with duplicates; warnings (dropped
    // self-loops, merged duplicates) are appended to *warnings when given.
    static Graph from_edges(int node_count, std::vector<Edge> edges, bool directed,
                            std::vector<std::string> labels = {},
                            std::vector<std::string>* warnings = nullptr);

    int node_count() const { return node_count_; }
    // Logical edge count: undirected pairs are counted once.
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool directed() const { return directed_; }

    // Canonical edge list, sorted by (src, dst). For undirected graphs each
    // pair appears once with src < dst.
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<std::pair<int, double>>& out_neighbors(int u) const { return out_[check(u)]; }
    const std::vector<std::pair<int, double>>& in_neighbors(int u) const { return in_[check(u)]; }

    const std::string& label(int u) const { return labels_[check(u)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    // Index of the node carrying this label, or -1.
    int node_by_label(const std::string& label) const;

private:
    int check(int u) const;

    int node_count_ = 0;
    bool directed_ = true;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, double>>> out_;
    std::vector<std::vector<std::pair<int, double>>> in_;
    std::vector<std::string> labels_;
};

// Condensation of a graph into strongly connected components.
// components are listed in topological order of the condensation DAG.
struct SccDag {
    std::vector<int> component_of;          // node id -> component id
    std::vector<std::vector<int>> components;  // each sorted ascending
    std::vector<std::pair<int, int>> dag_edges;  // sorted, deduplicated
    std::vector<int> roots;                 // components with zero in-degree
};

struct DegreeReport {
    std::vector<int> in;
    std::vector<int> out;
    std::vector<int> total;  // undirected: incident edge count, not in+out
};

// Parse "u v [w]" lines; '#' starts a comment line; labels are arbitrary
// whitespace-free strings mapped to ids in order of first appearance.
// Throws ParseError naming the offending line on malformed input or
// non-positive weight.
Graph parse_edge_list(std::istream& text, bool directed,
                      std::vector<std::string>* warnings = nullptr);
Graph parse_edge_list(const std::string& text, bool directed,
                      std::vector<std::string>* warnings = nullptr);

// Deterministic inverse of parse_edge_list: one line per canonical edge,
// sorted by normalized ids, weight omitted when exactly 1.
std::string serialize_edge_list(const Graph& g);

// Tarjan decomposition, O(n + |E|).
SccDag scc_decompose(const Graph& g);

// Connectivity ignoring edge direction; parts sorted by smallest member.
std::vector<std::vector<int>> weakly_connected_components(const Graph& g);

// Directed closure of sources (sources included), sorted ascending.
// Throws std::invalid_argument on empty source set or invalid ids.
std::vector<int> reachable_from(const Graph& g, const std::vector<int>& sources);

// Unweighted degree counts.
DegreeReport degrees(const Graph& g);

// Subgraph induced by the given nodes (sorted internally); labels carried
// over, ids renumbered in ascending order of the original ids.
Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes);

}  // namespace herd
