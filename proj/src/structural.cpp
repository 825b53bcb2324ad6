#include "herd/structural.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

#include "herd/errors.hpp"

namespace herd {

namespace {

constexpr int kFree = -1;
constexpr int kInf = std::numeric_limits<int>::max();

// Hopcroft-Karp on the bipartite graph of out-copies (left) vs in-copies
// (right); one bipartite edge per directed arc. Undirected edges contribute
// both orientations through the adjacency lists.
class HopcroftKarp {
public:
    explicit HopcroftKarp(const Graph& g) : n_(g.node_count()) {
        adj_.resize(n_);
        for (int u = 0; u < n_; ++u)
            for (const auto& [v, w] : g.out_neighbors(u)) adj_[u].push_back(v);
        match_left_.assign(n_, kFree);
        match_right_.assign(n_, kFree);
    }

    int solve() {
        int matched = 0;
        while (bfs()) {
            for (int u = 0; u < n_; ++u)
                if (match_left_[u] == kFree && dfs(u)) ++matched;
        }
        return matched;
    }

private:
    bool bfs() {
        std::queue<int> queue;
        dist_.assign(n_, kInf);
        for (int u = 0; u < n_; ++u)
            if (match_left_[u] == kFree) dist_[u] = 0, queue.push(u);
        bool found = false;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (int v : adj_[u]) {
                const int next = match_right_[v];
                if (next == kFree) {
                    found = true;
                } else if (dist_[next] == kInf) {
                    dist_[next] = dist_[u] + 1;
                    queue.push(next);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj_[u]) {
            const int next = match_right_[v];
            if (next == kFree || (dist_[next] == dist_[u] + 1 && dfs(next))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_, match_right_, dist_;
};

// Min-cost max-flow (successive shortest paths, SPFA labels). Costs here
// are 0/1 so paths stay short.
class MinCostFlow {
public:
    explicit MinCostFlow(int nodes) : head_(nodes, -1) {}

    void add_arc(int from, int to, int cap, int cost) {
        edges_.push_back({to, head_[from], cap, cost});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0, -cost});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    // Returns {flow, cost}; augments one unit at a time along the cheapest
    // path, which keeps every intermediate flow value cost-optimal.
    std::pair<int, int> run(int source, int sink) {
        int flow = 0, cost = 0;
        while (true) {
            std::vector<int> dist(head_.size(), kInf), via(head_.size(), -1);
            std::vector<bool> queued(head_.size(), false);
            std::deque<int> queue{source};
            dist[source] = 0;
            while (!queue.empty()) {
                const int u = queue.front();
                queue.pop_front();
                queued[u] = false;
                for (int e = head_[u]; e != -1; e = edges_[e].next) {
                    if (edges_[e].cap <= 0) continue;
                    const int v = edges_[e].to;
                    if (dist[u] + edges_[e].cost < dist[v]) {
                        dist[v] = dist[u] + edges_[e].cost;
                        via[v] = e;
                        if (!queued[v]) {
                            queued[v] = true;
                            queue.push_back(v);
                        }
                    }
                }
            }
            if (dist[sink] == kInf) return {flow, cost};
            for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
                --edges_[via[v]].cap;
                ++edges_[via[v] ^ 1].cap;
            }
            ++flow;
            cost += dist[sink];
        }
    }

    int residual_cap(int arc) const { return edges_[arc].cap; }

private:
    struct Arc {
        int to, next, cap, cost;
    };
    std::vector<Arc> edges_;
    std::vector<int> head_;
};

}  // namespace

DriverNodeResult driver_node_count(const Graph& g) {
    const int n = g.node_count();
    DriverNodeResult result;
    if (n == 0) return result;

    HopcroftKarp hk(g);
    result.matching_size = hk.solve();

    // Unmatched in-copies remove dilations, but controllability also needs
    // every node accessible from an input, and a root component of the
    // condensation whose in-copies a matching saturates completely is
    // unreachable until an input attaches inside it. Among all maximum
    // matchings, pick one leaving the fewest root components saturated:
    // max flow with a unit cost on the last sink arc of each root hub.
    const SccDag dag = scc_decompose(g);
    std::vector<int> hub_of(n, -1);  // node -> root index, for root members
    for (size_t r = 0; r < dag.roots.size(); ++r)
        for (int v : dag.components[dag.roots[r]]) hub_of[v] = static_cast<int>(r);

    const int roots = static_cast<int>(dag.roots.size());
    const int source = 2 * n + roots, sink = source + 1;
    MinCostFlow flow(sink + 1);
    int next_arc = 0;  // add_arc consumes two slots; the forward arc is the even one
    const auto add = [&](int from, int to, int cap, int cost) {
        flow.add_arc(from, to, cap, cost);
        next_arc += 2;
        return next_arc - 2;
    };
    for (int u = 0; u < n; ++u) add(source, u, 1, 0);
    for (int u = 0; u < n; ++u)
        for (const auto& [v, w] : g.out_neighbors(u)) add(u, n + v, 1, 0);
    std::vector<int> in_arc(n), costly_arc(roots);
    for (int v = 0; v < n; ++v)
        in_arc[v] = hub_of[v] == -1 ? add(n + v, sink, 1, 0)
                                    : add(n + v, 2 * n + hub_of[v], 1, 0);
    for (int r = 0; r < roots; ++r) {
        const int size = static_cast<int>(dag.components[dag.roots[r]].size());
        if (size > 1) add(2 * n + r, sink, size - 1, 0);
        costly_arc[r] = add(2 * n + r, sink, 1, 1);
    }

    const auto [max_flow, saturated_roots] = flow.run(source, sink);
    if (max_flow != result.matching_size)
        throw NumericError("driver_node_count: matching routes disagree");

    for (int v = 0; v < n; ++v)
        if (flow.residual_cap(in_arc[v]) == 1) result.unmatched.push_back(v);
    for (int r = 0; r < roots; ++r)
        if (flow.residual_cap(costly_arc[r]) == 0)
            result.matched_root_reps.push_back(dag.components[dag.roots[r]].front());

    result.driver_count = static_cast<int>(result.unmatched.size()) + saturated_roots;
    result.driver_fraction = static_cast<double>(result.driver_count) / n;
    return result;
}

}  // namespace herd
