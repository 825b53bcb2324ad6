#include <CLI11.hpp>

#include <iostream>

#include "herd/cli.hpp"
#include "herd/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"herdability analysis of positive systems on networks"};
    app.set_help_flag("--help", "print help");  // frees -h for simulate's --h
    app.set_version_flag("--version", std::string(herd::kVersion));
    app.require_subcommand(1);

    herd::cli::RunConfig config;

    auto add_common = [&](CLI::App* sub, bool with_d) {
        sub->add_option("file", config.input_path, "edge-list file (u v [w] per line)");
        sub->add_option("--synthetic", config.synthetic,
                        "generate input: erdos:n,p,seed | scalefree:n,m,seed");
        sub->add_flag("--undirected", config.undirected, "treat edges as undirected");
        sub->add_option("--format", config.format, "output format: json|csv")
            ->default_str("json");
        sub->add_option("--jobs", config.jobs, "worker pool size (0 = all cores)")
            ->envname("HERD_JOBS");
        sub->add_option("--seed", config.seed, "seed when the synthetic spec omits one");
        if (with_d) sub->add_option("--d", config.d, "orthant threshold")->default_str("1.0");
        return sub;
    };

    CLI::App* check = add_common(app.add_subcommand("check", "input-connectability test"), false);
    check->add_option("--inputs", config.inputs_csv, "comma-separated input node labels")
        ->required();

    CLI::App* cover =
        add_common(app.add_subcommand("cover", "minimal herding node set"), false);
    cover->add_option("--tie-break", config.tie_break,
                      "representative choice: smallest|outdegree|degree");

    CLI::App* centrality = add_common(
        app.add_subcommand("centrality", "herdability or classical centrality"), true);
    centrality->add_option("--measure", config.measure,
                           "hc|indegree|eccentricity|closeness|betweenness|eigenvector|katz");
    centrality->add_option("--katz-alpha", config.katz_alpha, "Katz attenuation");
    centrality->add_option("--top-fraction", config.top_fraction,
                           "hub report fraction (hc only)");
    centrality->add_option("--rank-cutoff", config.rank_cutoff,
                           "relative eigenvalue cutoff factor");

    CLI::App* classic =
        add_common(app.add_subcommand("classic", "all classical centralities"), false);
    classic->add_option("--katz-alpha", config.katz_alpha, "Katz attenuation");

    CLI::App* compare = add_common(
        app.add_subcommand("compare", "best-classical vs herdability overlap"), true);
    compare->add_option("--katz-alpha", config.katz_alpha, "Katz attenuation");
    compare->add_option("--rank-cutoff", config.rank_cutoff,
                        "relative eigenvalue cutoff factor");

    add_common(app.add_subcommand("drivers", "driver-node baseline via maximum matching"),
               false);

    CLI::App* simulate = add_common(
        app.add_subcommand("simulate", "integrate the minimum-energy herding run"), true);
    simulate->add_option("--node", config.node_label, "herding node label")->required();
    simulate->add_option("--tf", config.t_f, "synthesis horizon (default 40/|abscissa|)");
    simulate->add_option("--h", config.step, "integration step (default t_f/4000)");
    simulate->add_option("--out", config.out_path, "trajectory CSV path");
    simulate->add_option("--rank-cutoff", config.rank_cutoff,
                         "relative eigenvalue cutoff factor");

    CLI::App* table = add_common(
        app.add_subcommand("table", "summary row: N, L, direction, n_w, n_H, n_c"), false);
    table->add_option("--tie-break", config.tie_break,
                      "representative choice: smallest|outdegree|degree");

    CLI11_PARSE(app, argc, argv);

    for (CLI::App* sub : {check, cover, centrality, classic, compare, simulate, table})
        if (sub->parsed()) config.command = sub->get_name();
    if (config.command.empty()) config.command = "drivers";

    const herd::cli::RunResult result = herd::cli::run(config);
    if (!result.output.empty()) std::cout << result.output;
    if (!result.error.empty()) std::cerr << result.error << "\n";
    return result.exit_code;
}
