#include "herd/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "herd/centrality.hpp"
#include "herd/dynamics.hpp"
#include "herd/energy.hpp"
#include "herd/errors.hpp"
#include "herd/generators.hpp"
#include "herd/graph.hpp"
#include "herd/herdability.hpp"
#include "herd/sim.hpp"
#include "herd/structural.hpp"
#include "herd/version.hpp"

namespace herd::cli {

namespace {

using json = nlohmann::ordered_json;

double round_for_json(double v) { return v; }

json vector_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(std::isnan(v(i)) ? json(nullptr) : json(round_for_json(v(i))));
    return arr;
}

json labels_json(const Graph& g, const std::vector<int>& nodes) {
    json arr = json::array();
    for (int v : nodes) arr.push_back(g.label(v));
    return arr;
}

TieBreak parse_tie_break(const std::string& name) {
    if (name == "smallest") return TieBreak::kSmallestId;
    if (name == "outdegree") return TieBreak::kMaxOutDegree;
    if (name == "degree") return TieBreak::kMaxTotalDegree;
    throw ParseError("unknown tie-break policy '" + name + "'");
}

Measure parse_measure(const std::string& name) {
    for (Measure m : {Measure::kHerdability, Measure::kInDegree, Measure::kEccentricity,
                      Measure::kCloseness, Measure::kBetweenness, Measure::kEigenvector,
                      Measure::kKatz})
        if (name == measure_name(m)) return m;
    throw ParseError("unknown measure '" + name + "'");
}

Graph load_graph(const RunConfig& config, std::vector<std::string>* warnings) {
    const bool directed = !config.undirected;
    if (!config.synthetic.empty()) {
        if (!config.input_path.empty())
            throw ParseError("give either an input file or --synthetic, not both");
        std::istringstream spec(config.synthetic);
        std::string kind;
        std::getline(spec, kind, ':');
        std::string rest;
        std::getline(spec, rest);
        for (char& c : rest)
            if (c == ',') c = ' ';
        std::istringstream args(rest);
        if (kind == "erdos") {
            int n = 0;
            double p = 0.0;
            std::uint64_t seed = config.seed;  // used when the synthetic string omits it
            if (!(args >> n >> p))
                throw ParseError("--synthetic erdos wants 'erdos:n,p[,seed]'");
            args >> seed;
            return erdos_renyi(n, p, seed, directed);
        }
        if (kind == "scalefree") {
            int n = 0, m = 0;
            std::uint64_t seed = config.seed;
            if (!(args >> n >> m))
                throw ParseError("--synthetic scalefree wants 'scalefree:n,m[,seed]'");
            args >> seed;
            return scale_free(n, m, seed, directed);
        }
        throw ParseError("unknown synthetic family '" + kind + "'");
    }
    if (config.input_path.empty()) throw ParseError("no input: give a file or --synthetic");
    std::ifstream file(config.input_path);
    if (!file) throw ParseError("cannot open '" + config.input_path + "'");
    return parse_edge_list(file, directed, warnings);
}

json config_json(const RunConfig& c) {
    json j;
    j["input"] = c.synthetic.empty() ? c.input_path : c.synthetic;
    j["directed"] = !c.undirected;
    j["d"] = c.d;
    j["measure"] = c.measure;
    j["katz_alpha"] = c.katz_alpha < 0 ? json("auto") : json(c.katz_alpha);
    j["top_fraction"] = c.top_fraction;
    j["tie_break"] = c.tie_break;
    j["rank_cutoff"] = c.rank_cutoff < 0 ? json("auto") : json(c.rank_cutoff);
    j["format"] = c.format;
    j["seed"] = c.seed;
    j["jobs"] = c.jobs == 0 ? json("auto") : json(c.jobs);
    if (c.command == "check") j["inputs"] = c.inputs_csv;
    if (c.command == "simulate") {
        j["node"] = c.node_label;
        j["t_f"] = c.t_f < 0 ? json("auto") : json(c.t_f);
        j["h"] = c.step < 0 ? json("auto") : json(c.step);
        j["out"] = c.out_path;
    }
    return j;
}

json tolerances_json(const Graph& g, const RunConfig& c) {
    json j;
    j["rank_cutoff_factor"] =
        c.rank_cutoff < 0 ? default_rank_cutoff(g.node_count()) : c.rank_cutoff;
    j["hurwitz_abscissa"] = 1e-10;
    j["lyapunov_residual_rel"] = 1e-8;
    j["kkt_residual"] = 1e-6;
    j["feasibility_phase"] = 1e-8;
    j["terminal_margin_rel"] = 1e-3;
    return j;
}

json report_shell(const RunConfig& config, const Graph& g,
                  const std::vector<std::string>& warnings) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["command"] = config.command;
    j["config"] = config_json(config);
    j["tolerances"] = tolerances_json(g, config);
    j["labels"] = labels_json(g, [&] {
        std::vector<int> all(g.node_count());
        for (int i = 0; i < g.node_count(); ++i) all[i] = i;
        return all;
    }());
    if (!warnings.empty()) j["warnings"] = warnings;
    return j;
}

std::vector<int> parse_input_labels(const Graph& g, const std::string& csv) {
    std::vector<int> nodes;
    std::istringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        const int id = g.node_by_label(token);
        if (id < 0) throw ParseError("unknown node label '" + token + "'");
        nodes.push_back(id);
    }
    if (nodes.empty()) throw ParseError("check needs --inputs with at least one node label");
    return nodes;
}

// Largest SCC, smallest component id on ties: the working graph for the
// centrality family on inputs that are not strongly connected.
std::pair<Graph, json> restrict_to_largest_scc(const Graph& g) {
    const SccDag dag = scc_decompose(g);
    json notice;
    if (dag.components.size() <= 1) return {g, notice};
    size_t best = 0;
    for (size_t i = 1; i < dag.components.size(); ++i)
        if (dag.components[i].size() > dag.components[best].size()) best = i;
    notice["notice"] = "input is not strongly connected; using its largest strongly "
                       "connected component";
    notice["component_nodes"] = static_cast<int>(dag.components[best].size());
    notice["total_nodes"] = g.node_count();
    return {induced_subgraph(g, dag.components[best]), notice};
}

std::string centrality_csv(const Graph& g, const Eigen::VectorXd& scores) {
    std::ostringstream out;
    out << "node,score\n";
    for (int i = 0; i < g.node_count(); ++i) {
        out << g.label(i) << ',';
        if (std::isnan(scores(i)))
            out << "nan";
        else
            out << scores(i);
        out << '\n';
    }
    return out.str();
}

json hc_json(const Graph& g, const HerdabilityCentralityReport& rep) {
    json j;
    j["d"] = rep.d;
    j["horizon"] = rep.horizon_policy;
    j["energy"] = vector_json(rep.energy);
    j["centrality"] = vector_json(rep.centrality);
    j["argmin_nodes"] = labels_json(g, rep.argmin_nodes);
    j["partial"] = rep.partial;
    if (rep.partial) {
        json failures = json::array();
        for (const NodeFailure& f : rep.failures)
            failures.push_back({{"node", g.label(f.node)}, {"error", f.message}});
        j["failures"] = failures;
    }
    return j;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << 't';
    for (Eigen::Index i = 0; i < traj.states.cols(); ++i) out << ",x_" << i;
    for (Eigen::Index i = 0; i < traj.inputs.cols(); ++i) out << ",u";
    out << '\n';
    for (Eigen::Index k = 0; k < traj.times.size(); ++k) {
        out << traj.times(k);
        for (Eigen::Index i = 0; i < traj.states.cols(); ++i) out << ',' << traj.states(k, i);
        for (Eigen::Index i = 0; i < traj.inputs.cols(); ++i) out << ',' << traj.inputs(k, i);
        out << '\n';
    }
}

std::string dispatch(const RunConfig& config) {
    std::vector<std::string> warnings;
    const Graph g = load_graph(config, &warnings);
    json report = report_shell(config, g, warnings);
    const CentralityOptions copts{config.rank_cutoff, true, config.jobs};

    if (config.command == "check") {
        const std::vector<int> inputs = parse_input_labels(g, config.inputs_csv);
        const HerdabilityCheck check = is_herdable(g, inputs);
        report["herdable"] = check.herdable;
        report["unreached"] = labels_json(g, check.unreached);
    } else if (config.command == "cover") {
        const HerdingCover cover = herding_cover(g, parse_tie_break(config.tie_break));
        report["N_H"] = cover.herding_count;
        report["N_r"] = cover.root_count;
        report["N_w"] = cover.weak_component_count;
        report["n_H"] = cover.herding_fraction;
        report["n_w"] = cover.per_weak_component;
        report["herding_nodes"] = labels_json(g, cover.herding_nodes);
    } else if (config.command == "centrality") {
        const Measure measure = parse_measure(config.measure);
        if (measure == Measure::kHerdability) {
            auto [scc, notice] = restrict_to_largest_scc(g);
            const HerdabilityCentralityReport rep = herdability_centrality(scc, config.d, copts);
            if (config.format == "csv") return centrality_csv(scc, rep.centrality);
            if (!notice.is_null()) report["scc"] = notice;
            report["labels"] = labels_json(scc, [&] {
                std::vector<int> all(scc.node_count());
                for (int i = 0; i < scc.node_count(); ++i) all[i] = i;
                return all;
            }());
            report["herdability_centrality"] = hc_json(scc, rep);
            const HubDegreeReport hub = hub_degree_report(scc, rep, config.top_fraction);
            report["hub_degree"] = {{"top_fraction", hub.top_fraction},
                                    {"avg_degree_overall", hub.avg_degree_overall},
                                    {"avg_degree_top", hub.avg_degree_top},
                                    {"top_nodes", labels_json(scc, hub.top_nodes)}};
        } else {
            const ClassicCentralityReport rep =
                classic_centrality(g, measure, KatzParams{config.katz_alpha});
            if (config.format == "csv") return centrality_csv(g, rep.scores);
            report["measure"] = rep.measure;
            if (measure == Measure::kKatz) report["katz_alpha_used"] = rep.katz_alpha;
            report["scores"] = vector_json(rep.scores);
        }
    } else if (config.command == "classic") {
        json all;
        std::ostringstream csv;
        csv << "node";
        std::vector<ClassicCentralityReport> reps;
        for (Measure m : {Measure::kInDegree, Measure::kEccentricity, Measure::kCloseness,
                          Measure::kBetweenness, Measure::kEigenvector, Measure::kKatz}) {
            reps.push_back(classic_centrality(g, m, KatzParams{config.katz_alpha}));
            all[reps.back().measure] = vector_json(reps.back().scores);
            csv << ',' << reps.back().measure;
        }
        if (config.format == "csv") {
            csv << '\n';
            for (int i = 0; i < g.node_count(); ++i) {
                csv << g.label(i);
                for (const auto& rep : reps) csv << ',' << rep.scores(i);
                csv << '\n';
            }
            return csv.str();
        }
        report["scores"] = all;
        report["katz_alpha_used"] = reps.back().katz_alpha;
    } else if (config.command == "compare") {
        auto [scc, notice] = restrict_to_largest_scc(g);
        if (!notice.is_null()) report["scc"] = notice;
        const HerdabilityCentralityReport hc = herdability_centrality(scc, config.d, copts);
        const OverlapReport rep = overlap_report(scc, hc, KatzParams{config.katz_alpha});
        json entries = json::array();
        for (const OverlapEntry& e : rep.entries)
            entries.push_back({{"measure", e.measure},
                               {"argmax_nodes", labels_json(scc, e.argmax_nodes)},
                               {"hc_max", e.hc_max},
                               {"hc_min", e.hc_min},
                               {"attains_best", e.attains_best}});
        report["overlap"] = entries;
        report["any_attains_best"] = rep.any_attains;
        report["herdability_centrality"] = hc_json(scc, hc);
    } else if (config.command == "drivers") {
        const DriverNodeResult res = driver_node_count(g);
        report["N_c"] = res.driver_count;
        report["n_c"] = res.driver_fraction;
        report["matching_size"] = res.matching_size;
        std::vector<int> drivers = res.unmatched;
        drivers.insert(drivers.end(), res.matched_root_reps.begin(),
                       res.matched_root_reps.end());
        std::sort(drivers.begin(), drivers.end());
        report["driver_nodes"] = labels_json(g, drivers);
        if (!res.matched_root_reps.empty())
            report["note"] = "includes one attachment node per fully matched root component";
    } else if (config.command == "simulate") {
        if (config.node_label.empty()) throw ParseError("simulate needs --node <label>");
        const int node = g.node_by_label(config.node_label);
        if (node < 0) throw ParseError("unknown node label '" + config.node_label + "'");
        const HerdingVerification rec =
            verify_herding(g, node, config.d, config.t_f, config.step, config.rank_cutoff);
        report["node"] = config.node_label;
        report["d"] = rec.d;
        report["t_f"] = rec.t_f;
        report["h"] = rec.h;
        report["predicted_energy"] = rec.predicted_energy;
        report["realized_energy"] = rec.realized_energy;
        report["energy_ratio"] = rec.energy_ratio;
        report["terminal_margin"] = rec.terminal_margin;
        report["pass"] = rec.pass;
        if (!config.out_path.empty()) {
            write_trajectory_csv(config.out_path, rec.trajectory);
            report["trajectory_csv"] = config.out_path;
        }
    } else if (config.command == "table") {
        const HerdingCover cover = herding_cover(g, parse_tie_break(config.tie_break));
        const DriverNodeResult drivers = driver_node_count(g);
        report["name"] = config.synthetic.empty() ? config.input_path : config.synthetic;
        report["N"] = g.node_count();
        report["L"] = g.edge_count();
        report["directed"] = g.directed() ? "D" : "U";
        report["n_w"] = cover.per_weak_component;
        report["n_H"] = cover.herding_fraction;
        report["n_c"] = drivers.driver_fraction;
    } else {
        throw ParseError("unknown command '" + config.command + "'");
    }
    return report.dump(2) + "\n";
}

}  // namespace

RunResult run(const RunConfig& config) {
    RunResult result;
    try {
        if (config.format != "json" && config.format != "csv")
            throw ParseError("unknown format '" + config.format + "'");
        if (config.format == "csv" && config.command != "centrality" &&
            config.command != "classic")
            throw ParseError("csv output is only available for per-node tables "
                             "(centrality, classic)");
        result.output = dispatch(config);
    } catch (const ParseError& e) {
        result.exit_code = 1;
        result.error = std::string("error: ") + e.what();
    } catch (const std::invalid_argument& e) {
        result.exit_code = 1;
        result.error = std::string("error: ") + e.what();
    } catch (const NumericError& e) {
        result.exit_code = 2;
        result.error = std::string("numerical failure: ") + e.what();
    }
    return result;
}

}  // namespace herd::cli
