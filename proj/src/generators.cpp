#include "herd/generators.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace herd {

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }
    std::uint64_t below(std::uint64_t bound) { return eng_() % bound; }

private:
    std::mt19937_64 eng_;
};

}  // namespace

Graph erdos_renyi(int n, double p, std::uint64_t seed, bool directed) {
    if (n < 0) throw std::invalid_argument("erdos_renyi: negative n");
    if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("erdos_renyi: p must be in [0, 1]");
    Draw draw(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = directed ? 0 : u + 1; v < n; ++v) {
            if (u == v) continue;
            if (draw.uniform() < p) edges.push_back({u, v, 1.0});
        }
    return Graph::from_edges(n, std::move(edges), directed);
}

Graph scale_free(int n, int m, std::uint64_t seed, bool directed) {
    if (n < 2) throw std::invalid_argument("scale_free: n must be >= 2");
    if (m < 1 || m >= n) throw std::invalid_argument("scale_free: need 1 <= m < n");
    Draw draw(seed);
    // endpoint pool doubles as the preferential-attachment distribution
    std::vector<int> pool;
    std::vector<std::pair<int, int>> pairs;
    const int core = m;
    for (int t = core; t < n; ++t) {
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < std::min(m, t)) {
            int candidate;
            if (pool.empty() || draw.uniform() < 0.05)  // occasional uniform pick keeps
                candidate = static_cast<int>(draw.below(t));  // early nodes reachable
            else
                candidate = pool[draw.below(pool.size())];
            targets.insert(candidate);
        }
        for (int target : targets) {
            pairs.emplace_back(t, target);
            pool.push_back(t);
            pool.push_back(target);
        }
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : pairs) {
        edges.push_back({u, v, 1.0});
        if (directed) edges.push_back({v, u, 1.0});
    }
    return Graph::from_edges(n, std::move(edges), directed);
}

Graph random_strongly_connected(int n, double extra_p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_strongly_connected: n must be >= 1");
    Draw draw(seed);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[draw.below(static_cast<std::uint64_t>(i) + 1)]);

    std::set<std::pair<int, int>> arcs;
    for (int i = 0; i < n && n > 1; ++i) arcs.emplace(perm[i], perm[(i + 1) % n]);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (draw.uniform() < extra_p) arcs.emplace(u, v);
        }
    std::vector<Edge> edges;
    for (const auto& [u, v] : arcs) edges.push_back({u, v, 1.0});
    return Graph::from_edges(n, std::move(edges), /*directed=*/true);
}

}  // namespace herd
