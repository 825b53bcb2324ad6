#include "herd/herdability.hpp"

#include <algorithm>

namespace herd {

HerdabilityCheck is_herdable(const Graph& g, const std::vector<int>& input_nodes) {
    if (input_nodes.empty()) throw std::invalid_argument("is_herdable: empty input set");
    const std::vector<int> covered = reachable_from(g, input_nodes);
    HerdabilityCheck check;
    std::vector<bool> hit(g.node_count(), false);
    for (int v : covered) hit[v] = true;
    for (int v = 0; v < g.node_count(); ++v)
        if (!hit[v]) check.unreached.push_back(v);
    check.herdable = check.unreached.empty();
    return check;
}

HerdingCover herding_cover(const Graph& g, TieBreak tie_break) {
    const SccDag dag = scc_decompose(g);
    const DegreeReport deg = (tie_break == TieBreak::kSmallestId) ? DegreeReport{} : degrees(g);

    HerdingCover cover;
    for (int root : dag.roots) {
        const std::vector<int>& members = dag.components[root];
        int pick = members.front();  // members sorted, so this is smallest-id
        if (tie_break != TieBreak::kSmallestId) {
            const std::vector<int>& score =
                tie_break == TieBreak::kMaxOutDegree ? deg.out : deg.total;
            for (int v : members)
                if (score[v] > score[pick]) pick = v;
        }
        cover.herding_nodes.push_back(pick);
    }
    std::sort(cover.herding_nodes.begin(), cover.herding_nodes.end());

    cover.root_count = static_cast<int>(dag.roots.size());
    cover.herding_count = static_cast<int>(cover.herding_nodes.size());
    cover.weak_component_count = static_cast<int>(weakly_connected_components(g).size());
    if (g.node_count() > 0) {
        cover.herding_fraction = static_cast<double>(cover.herding_count) / g.node_count();
        cover.per_weak_component =
            static_cast<double>(cover.herding_count) / cover.weak_component_count;
    }
    return cover;
}

Eigen::MatrixXd build_input_matrix(const HerdingCover& cover, int node_count) {
    if (cover.herding_nodes.empty())
        throw std::invalid_argument("build_input_matrix: empty herding cover");
    Eigen::MatrixXd input = Eigen::MatrixXd::Zero(node_count, cover.herding_nodes.size());
    for (size_t j = 0; j < cover.herding_nodes.size(); ++j) {
        const int node = cover.herding_nodes[j];
        if (node < 0 || node >= node_count)
            throw std::invalid_argument("build_input_matrix: herding node out of range");
        input(node, static_cast<Eigen::Index>(j)) = 1.0;
    }
    return input;
}

}  // namespace herd
