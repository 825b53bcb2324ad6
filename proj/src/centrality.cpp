#include "herd/centrality.hpp"

#include <Eigen/Dense>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "herd/dynamics.hpp"
#include "herd/energy.hpp"
#include "herd/errors.hpp"

namespace herd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_strongly_connected(const Graph& g, const char* op) {
    if (g.node_count() == 0) throw std::invalid_argument(std::string(op) + ": empty graph");
    if (scc_decompose(g).components.size() != 1)
        throw std::invalid_argument(std::string(op) +
                                    ": graph is not strongly connected; extract the largest "
                                    "strongly connected component first");
}

// Hop distances from every source; -1 marks unreachable pairs.
std::vector<std::vector<int>> all_pairs_hops(const Graph& g) {
    const int n = g.node_count();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        auto& d = dist[s];
        d[s] = 0;
        queue.assign(1, s);
        for (size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            for (const auto& [v, w] : g.out_neighbors(u))
                if (d[v] == -1) {
                    d[v] = d[u] + 1;
                    queue.push_back(v);
                }
        }
    }
    return dist;
}

Eigen::VectorXd betweenness_scores(const Graph& g) {
    // Brandes accumulation on unweighted directed shortest paths,
    // endpoints excluded, pairwise fractional counts.
    const int n = g.node_count();
    Eigen::VectorXd bc = Eigen::VectorXd::Zero(n);
    std::vector<int> dist(n), order;
    std::vector<double> sigma(n), delta(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.assign(1, s);
        dist[s] = 0;
        sigma[s] = 1.0;
        for (size_t head = 0; head < order.size(); ++head) {
            const int u = order[head];
            for (const auto& [v, w] : g.out_neighbors(u)) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    order.push_back(v);
                }
                if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
            }
        }
        for (size_t k = order.size(); k-- > 1;) {
            const int w = order[k];
            for (const auto& [v, wt] : g.in_neighbors(w))
                if (dist[v] == dist[w] - 1 && dist[v] != -1)
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            bc(w) += delta[w];
        }
    }
    if (!g.directed()) bc *= 0.5;  // count unordered pairs once
    return bc;
}

Eigen::MatrixXd adjacency_transpose(const Graph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd at = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u)
        for (const auto& [v, w] : g.out_neighbors(u)) at(v, u) = 1.0;
    return at;
}

// Power iteration on A^T + I; the shift keeps periodic graphs (cycles)
// convergent without moving the dominant eigenvector.
Eigen::VectorXd dominant_in_eigenvector(const Graph& g, double* rho_out) {
    const int n = g.node_count();
    const Eigen::MatrixXd shifted =
        adjacency_transpose(g) + Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    double rho = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 20000; ++iter) {
        Eigen::VectorXd next = shifted * x;
        rho = next.norm();
        if (rho == 0.0) throw NumericError("eigenvector centrality: zero iterate");
        next /= rho;
        const double change = (next - x).norm();
        x = next;
        if (change < 1e-13) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericError("eigenvector centrality: power iteration did not converge");
    if (rho_out) *rho_out = rho - 1.0;
    return x;
}

double herding_energy_impl(const Graph& g, int node, double d, double rank_cutoff) {
    const SystemMatrices sys = taylor_consensus(g, node);
    const Gramian gram = lyapunov_gramian(sys);
    const GramianSpectrum spec = spectrum(gram, rank_cutoff);
    return min_energy_to_orthant(spec, d).energy;
}

HerdabilityCentralityReport assemble_report(const Graph& g, double d, Eigen::VectorXd energy,
                                            std::vector<NodeFailure> failures) {
    const int n = g.node_count();
    HerdabilityCentralityReport rep;
    rep.d = d;
    rep.energy = std::move(energy);
    rep.failures = std::move(failures);
    rep.partial = !rep.failures.empty();

    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        if (!std::isnan(rep.energy(i))) best = std::min(best, rep.energy(i));
    if (!std::isfinite(best))
        throw NumericError("herdability_centrality: every per-node solve failed");

    rep.centrality = Eigen::VectorXd::Constant(n, kNaN);
    for (int i = 0; i < n; ++i) {
        if (std::isnan(rep.energy(i))) continue;
        rep.centrality(i) = best / rep.energy(i);
        if (rep.energy(i) <= best * (1.0 + 1e-12)) rep.argmin_nodes.push_back(i);
    }
    return rep;
}

}  // namespace

const char* measure_name(Measure m) {
    switch (m) {
        case Measure::kHerdability: return "hc";
        case Measure::kInDegree: return "indegree";
        case Measure::kEccentricity: return "eccentricity";
        case Measure::kCloseness: return "closeness";
        case Measure::kBetweenness: return "betweenness";
        case Measure::kEigenvector: return "eigenvector";
        case Measure::kKatz: return "katz";
    }
    return "?";
}

double herding_energy(const Graph& g, int node, double d, double rank_cutoff) {
    return herding_energy_impl(g, node, d, rank_cutoff);
}

HerdabilityCentralityReport herdability_centrality(const Graph& g, double d,
                                                   const CentralityOptions& opts) {
    require_strongly_connected(g, "herdability_centrality");
    const int n = g.node_count();
    Eigen::VectorXd energy = Eigen::VectorXd::Constant(n, kNaN);
    std::vector<std::string> errors(n);

    const int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (opts.parallel)
    for (int i = 0; i < n; ++i) {
        try {
            energy(i) = herding_energy_impl(g, i, d, opts.rank_cutoff);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }

    std::vector<NodeFailure> failures;
    for (int i = 0; i < n; ++i)
        if (!errors[i].empty()) failures.push_back({i, errors[i]});
    return assemble_report(g, d, std::move(energy), std::move(failures));
}

HerdabilityCentralityReport herdability_centrality_serial(const Graph& g, double d,
                                                          double rank_cutoff) {
    require_strongly_connected(g, "herdability_centrality");
    const int n = g.node_count();
    Eigen::VectorXd energy = Eigen::VectorXd::Constant(n, kNaN);
    std::vector<NodeFailure> failures;
    for (int i = 0; i < n; ++i) {
        try {
            energy(i) = herding_energy_impl(g, i, d, rank_cutoff);
        } catch (const std::exception& e) {
            failures.push_back({i, e.what()});
        }
    }
    return assemble_report(g, d, std::move(energy), std::move(failures));
}

double adjacency_spectral_radius(const Graph& g) {
    double rho = 0.0;
    dominant_in_eigenvector(g, &rho);
    return std::max(rho, 0.0);
}

ClassicCentralityReport classic_centrality(const Graph& g, Measure measure, KatzParams params) {
    const int n = g.node_count();
    if (n == 0) throw std::invalid_argument("classic_centrality: empty graph");
    ClassicCentralityReport rep;
    rep.measure = measure_name(measure);
    switch (measure) {
        case Measure::kHerdability:
            throw std::invalid_argument("classic_centrality: use herdability_centrality for hc");
        case Measure::kInDegree: {
            const DegreeReport deg = degrees(g);
            rep.scores = Eigen::Map<const Eigen::VectorXi>(deg.in.data(), n).cast<double>();
            break;
        }
        case Measure::kEccentricity: {
            const auto dist = all_pairs_hops(g);
            rep.scores = Eigen::VectorXd::Zero(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (dist[i][j] > 0) rep.scores(i) = std::max(rep.scores(i), double(dist[i][j]));
            break;
        }
        case Measure::kCloseness: {
            const auto dist = all_pairs_hops(g);
            rep.scores = Eigen::VectorXd::Zero(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (j != i && dist[i][j] > 0) rep.scores(i) += 1.0 / dist[i][j];
            break;
        }
        case Measure::kBetweenness:
            rep.scores = betweenness_scores(g);
            break;
        case Measure::kEigenvector: {
            require_strongly_connected(g, "eigenvector centrality");
            rep.scores = dominant_in_eigenvector(g, nullptr);
            break;
        }
        case Measure::kKatz: {
            const double rho = adjacency_spectral_radius(g);
            double alpha = params.alpha;
            if (alpha < 0) alpha = rho > 1e-9 ? 0.85 / rho : 0.85;
            if (rho > 1e-9 && alpha >= 1.0 / rho)
                throw std::invalid_argument("katz: alpha " + std::to_string(alpha) +
                                            " must be below 1/lambda_max = " +
                                            std::to_string(1.0 / rho));
            const Eigen::MatrixXd system =
                Eigen::MatrixXd::Identity(n, n) - alpha * adjacency_transpose(g);
            rep.scores = Eigen::PartialPivLU<Eigen::MatrixXd>(system).solve(
                Eigen::VectorXd::Ones(n));
            rep.katz_alpha = alpha;
            break;
        }
    }
    return rep;
}

OverlapReport overlap_report(const Graph& g, const HerdabilityCentralityReport& hc,
                             KatzParams params) {
    OverlapReport rep;
    rep.d = hc.d;
    const Measure classics[] = {Measure::kInDegree,    Measure::kEccentricity,
                                Measure::kCloseness,   Measure::kBetweenness,
                                Measure::kEigenvector, Measure::kKatz};
    for (Measure m : classics) {
        const ClassicCentralityReport classic = classic_centrality(g, m, params);
        OverlapEntry entry;
        entry.measure = classic.measure;
        const double top = classic.scores.maxCoeff();
        const double tie = 1e-9 * std::max(1.0, std::abs(top));
        entry.hc_max = -std::numeric_limits<double>::infinity();
        entry.hc_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < classic.scores.size(); ++i) {
            if (classic.scores(i) < top - tie) continue;
            entry.argmax_nodes.push_back(i);
            entry.hc_max = std::max(entry.hc_max, hc.centrality(i));
            entry.hc_min = std::min(entry.hc_min, hc.centrality(i));
        }
        entry.attains_best = entry.hc_max >= 1.0 - 1e-12;
        rep.any_attains = rep.any_attains || entry.attains_best;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

OverlapReport overlap_report(const Graph& g, double d, KatzParams params,
                             const CentralityOptions& opts) {
    return overlap_report(g, herdability_centrality(g, d, opts), params);
}

HubDegreeReport hub_degree_report(const Graph& g, const HerdabilityCentralityReport& hc,
                                  double top_fraction) {
    if (!(top_fraction > 0.0) || top_fraction > 1.0)
        throw std::invalid_argument("hub_degree_report: top_fraction must be in (0, 1]");
    const int n = g.node_count();
    const DegreeReport deg = degrees(g);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (hc.centrality(a) != hc.centrality(b)) return hc.centrality(a) > hc.centrality(b);
        return a < b;
    });

    HubDegreeReport rep;
    rep.top_fraction = top_fraction;
    const int take = static_cast<int>(std::ceil(top_fraction * n));
    double total = 0.0, top = 0.0;
    for (int i = 0; i < n; ++i) total += deg.total[i];
    for (int k = 0; k < take; ++k) {
        rep.top_nodes.push_back(order[k]);
        top += deg.total[order[k]];
    }
    rep.avg_degree_overall = total / n;
    rep.avg_degree_top = top / take;
    return rep;
}

HubDegreeReport hub_degree_report(const Graph& g, double d, double top_fraction,
                                  const CentralityOptions& opts) {
    return hub_degree_report(g, herdability_centrality(g, d, opts), top_fraction);
}

}  // namespace herd
