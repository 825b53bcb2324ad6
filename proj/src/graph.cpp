#include "herd/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stack>
#include <unordered_map>

namespace herd {

namespace {

std::string format_weight(double w) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, ptr);
}

}  // namespace

int Graph::check(int u) const {
    if (u < 0 || u >= node_count_) throw std::invalid_argument("node id out of range: " + std::to_string(u));
    return u;
}

int Graph::node_by_label(const std::string& label) const {
    for (int i = 0; i < node_count_; ++i)
        if (labels_[i] == label) return i;
    return -1;
}

Graph Graph::from_edges(int node_count, std::vector<Edge> edges, bool directed,
                        std::vector<std::string> labels,
                        std::vector<std::string>* warnings) {
    if (node_count < 0) throw std::invalid_argument("negative node count");
    Graph g;
    g.node_count_ = node_count;
    g.directed_ = directed;
    if (labels.empty()) {
        labels.reserve(node_count);
        for (int i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
    } else if (static_cast<int>(labels.size()) != node_count) {
        throw std::invalid_argument("label count does not match node count");
    }
    g.labels_ = std::move(labels);

    std::map<std::pair<int, int>, double> merged;
    for (const Edge& e : edges) {
        if (e.src < 0 || e.src >= node_count || e.dst < 0 || e.dst >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("edge weight must be a positive finite number");
        if (e.src == e.dst) {
            if (warnings)
                warnings->push_back("dropped self-loop at node '" + g.labels_[e.src] + "'");
            continue;
        }
        std::pair<int, int> key(e.src, e.dst);
        if (!directed && key.first > key.second) std::swap(key.first, key.second);
        auto [it, inserted] = merged.emplace(key, e.weight);
        if (!inserted) {
            it->second += e.weight;
            if (warnings)
                warnings->push_back("merged duplicate edge '" + g.labels_[key.first] + "' -> '" +
                                    g.labels_[key.second] + "' (weights summed)");
        }
    }

    g.edges_.reserve(merged.size());
    g.out_.assign(node_count, {});
    g.in_.assign(node_count, {});
    for (const auto& [key, w] : merged) {
        g.edges_.push_back({key.first, key.second, w});
        g.out_[key.first].emplace_back(key.second, w);
        g.in_[key.second].emplace_back(key.first, w);
        if (!directed) {
            g.out_[key.second].emplace_back(key.first, w);
            g.in_[key.first].emplace_back(key.second, w);
        }
    }
    for (auto& adj : g.out_) std::sort(adj.begin(), adj.end());
    for (auto& adj : g.in_) std::sort(adj.begin(), adj.end());
    return g;
}

namespace {

// Canonical label order: numeric when every label is a plain nonnegative
// integer, lexicographic otherwise. Ids derived this way depend only on the
// label set, which makes serialize -> parse -> serialize an exact fixed
// point.
std::vector<std::string> canonical_label_order(std::vector<std::string> labels) {
    const bool all_numeric = std::all_of(labels.begin(), labels.end(), [](const std::string& s) {
        if (s.empty() || s.size() > 18) return false;
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    });
    if (all_numeric)
        std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
    else
        std::sort(labels.begin(), labels.end());
    return labels;
}

}  // namespace

Graph parse_edge_list(std::istream& text, bool directed, std::vector<std::string>* warnings) {
    std::unordered_map<std::string, int> id_of;
    std::vector<std::string> labels;
    struct RawEdge {
        int src, dst;
        double weight;
    };
    std::vector<RawEdge> raw;
    auto intern = [&](const std::string& token) {
        auto [it, inserted] = id_of.emplace(token, static_cast<int>(labels.size()));
        if (inserted) labels.push_back(token);
        return it->second;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(text, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string u, v, w, extra;
        if (!(fields >> u)) continue;  // blank line
        if (u[0] == '#') continue;
        if (!(fields >> v))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v [w]', got '" + line + "'");
        double weight = 1.0;
        if (fields >> w) {
            const char* begin = w.data();
            const char* end = begin + w.size();
            auto [ptr, ec] = std::from_chars(begin, end, weight);
            if (ec != std::errc() || ptr != end)
                throw ParseError("line " + std::to_string(line_no) + ": malformed weight '" + w + "'");
            if (!(weight > 0.0) || !std::isfinite(weight))
                throw ParseError("line " + std::to_string(line_no) + ": non-positive weight " + w);
            if (fields >> extra)
                throw ParseError("line " + std::to_string(line_no) + ": trailing field '" + extra + "'");
        }
        raw.push_back({intern(u), intern(v), weight});
    }

    std::vector<std::string> ordered = canonical_label_order(labels);
    std::vector<int> remap(labels.size());
    for (size_t i = 0; i < labels.size(); ++i)
        remap[id_of.at(ordered[i])] = static_cast<int>(i);
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const RawEdge& e : raw) edges.push_back({remap[e.src], remap[e.dst], e.weight});
    const int node_count = static_cast<int>(ordered.size());
    return Graph::from_edges(node_count, std::move(edges), directed, std::move(ordered), warnings);
}

Graph parse_edge_list(const std::string& text, bool directed, std::vector<std::string>* warnings) {
    std::istringstream stream(text);
    return parse_edge_list(stream, directed, warnings);
}

std::string serialize_edge_list(const Graph& g) {
    std::string out;
    for (const Edge& e : g.edges()) {
        out += g.label(e.src);
        out += ' ';
        out += g.label(e.dst);
        if (e.weight != 1.0) {
            out += ' ';
            out += format_weight(e.weight);
        }
        out += '\n';
    }
    return out;
}

SccDag scc_decompose(const Graph& g) {
    const int n = g.node_count();
    SccDag dag;
    dag.component_of.assign(n, -1);

    // Iterative Tarjan; low-link via explicit DFS frames.
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    stack.reserve(n);
    int next_index = 0;

    struct Frame {
        int node;
        size_t edge = 0;
    };
    std::vector<Frame> frames;

    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        frames.push_back({start});
        while (!frames.empty()) {
            Frame& f = frames.back();
            const int u = f.node;
            if (f.edge == 0) {
                index[u] = lowlink[u] = next_index++;
                stack.push_back(u);
                on_stack[u] = true;
            }
            const auto& adj = g.out_neighbors(u);
            bool descended = false;
            while (f.edge < adj.size()) {
                const int v = adj[f.edge++].first;
                if (index[v] == -1) {
                    frames.push_back({v});
                    descended = true;
                    break;
                }
                if (on_stack[v]) lowlink[u] = std::min(lowlink[u], index[v]);
            }
            if (descended) continue;
            if (lowlink[u] == index[u]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    dag.component_of[w] = static_cast<int>(dag.components.size());
                    comp.push_back(w);
                } while (w != u);
                std::sort(comp.begin(), comp.end());
                dag.components.push_back(std::move(comp));
            }
            frames.pop_back();
            if (!frames.empty()) {
                const int parent = frames.back().node;
                lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
            }
        }
    }

    // Tarjan emits components in reverse topological order; flip so that
    // every dag edge points from a lower to a higher component id.
    const int c = static_cast<int>(dag.components.size());
    std::reverse(dag.components.begin(), dag.components.end());
    for (int& id : dag.component_of) id = c - 1 - id;

    for (int u = 0; u < n; ++u)
        for (const auto& [v, w] : g.out_neighbors(u)) {
            const int cu = dag.component_of[u], cv = dag.component_of[v];
            if (cu != cv) dag.dag_edges.emplace_back(cu, cv);
        }
    std::sort(dag.dag_edges.begin(), dag.dag_edges.end());
    dag.dag_edges.erase(std::unique(dag.dag_edges.begin(), dag.dag_edges.end()), dag.dag_edges.end());

    std::vector<bool> has_in(c, false);
    for (const auto& [from, to] : dag.dag_edges) has_in[to] = true;
    for (int i = 0; i < c; ++i)
        if (!has_in[i]) dag.roots.push_back(i);
    return dag;
}

std::vector<std::vector<int>> weakly_connected_components(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> part(n, -1);
    std::vector<std::vector<int>> parts;
    std::vector<int> queue;
    for (int start = 0; start < n; ++start) {
        if (part[start] != -1) continue;
        const int id = static_cast<int>(parts.size());
        parts.emplace_back();
        part[start] = id;
        queue.assign(1, start);
        while (!queue.empty()) {
            const int u = queue.back();
            queue.pop_back();
            parts[id].push_back(u);
            for (const auto& [v, w] : g.out_neighbors(u))
                if (part[v] == -1) part[v] = id, queue.push_back(v);
            for (const auto& [v, w] : g.in_neighbors(u))
                if (part[v] == -1) part[v] = id, queue.push_back(v);
        }
        std::sort(parts[id].begin(), parts[id].end());
    }
    return parts;
}

std::vector<int> reachable_from(const Graph& g, const std::vector<int>& sources) {
    if (sources.empty()) throw std::invalid_argument("reachable_from: empty source set");
    const int n = g.node_count();
    std::vector<bool> seen(n, false);
    std::vector<int> queue;
    for (int s : sources) {
        if (s < 0 || s >= n) throw std::invalid_argument("reachable_from: invalid node id " + std::to_string(s));
        if (!seen[s]) seen[s] = true, queue.push_back(s);
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (const auto& [v, w] : g.out_neighbors(u))
            if (!seen[v]) seen[v] = true, queue.push_back(v);
    }
    std::vector<int> out;
    out.reserve(queue.size());
    for (int v = 0; v < n; ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

DegreeReport degrees(const Graph& g) {
    const int n = g.node_count();
    DegreeReport rep;
    rep.in.resize(n);
    rep.out.resize(n);
    rep.total.resize(n);
    for (int u = 0; u < n; ++u) {
        rep.in[u] = static_cast<int>(g.in_neighbors(u).size());
        rep.out[u] = static_cast<int>(g.out_neighbors(u).size());
        rep.total[u] = g.directed() ? rep.in[u] + rep.out[u] : rep.out[u];
    }
    return rep;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> new_id(g.node_count(), -1);
    std::vector<std::string> labels;
    labels.reserve(sorted.size());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= g.node_count())
            throw std::invalid_argument("induced_subgraph: invalid node id");
        new_id[sorted[i]] = static_cast<int>(i);
        labels.push_back(g.label(sorted[i]));
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (new_id[e.src] != -1 && new_id[e.dst] != -1)
            edges.push_back({new_id[e.src], new_id[e.dst], e.weight});
    return Graph::from_edges(static_cast<int>(sorted.size()), std::move(edges), g.directed(),
                             std::move(labels));
}

}  // namespace herd
