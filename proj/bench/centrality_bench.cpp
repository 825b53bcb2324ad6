// Serial vs OpenMP timing for the per-node energy sweep, the one hot loop
// in the tool. Usage: herd_bench [n] [extra_p] [repeats]
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "herd/centrality.hpp"
#include "herd/generators.hpp"

using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 60;
    const double extra_p = argc > 2 ? std::atof(argv[2]) : 0.08;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

    const herd::Graph g = herd::random_strongly_connected(n, extra_p, 2024);
    std::cout << "graph: n=" << g.node_count() << " arcs=" << g.edge_count()
              << "  threads=" << omp_get_max_threads() << "\n";

    double serial_best = 1e300, parallel_best = 1e300;
    herd::HerdabilityCentralityReport serial_rep, parallel_rep;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = clock_type::now();
        serial_rep = herd::herdability_centrality_serial(g, 1.0);
        serial_best = std::min(serial_best, seconds_since(t0));

        t0 = clock_type::now();
        parallel_rep = herd::herdability_centrality(g, 1.0);
        parallel_best = std::min(parallel_best, seconds_since(t0));
    }

    const double max_diff =
        (serial_rep.centrality - parallel_rep.centrality).cwiseAbs().maxCoeff();
    std::cout << "serial:   " << serial_best << " s\n";
    std::cout << "parallel: " << parallel_best << " s\n";
    std::cout << "speedup:  " << serial_best / parallel_best << "x\n";
    std::cout << "max |serial - parallel| = " << max_diff << "\n";
    return max_diff == 0.0 ? 0 : 1;
}
