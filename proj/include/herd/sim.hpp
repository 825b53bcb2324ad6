#pragma once

#include <Eigen/Core>
#include <functional>

#include "herd/dynamics.hpp"
#include "herd/energy.hpp"
#include "herd/graph.hpp"

namespace herd {

// Fixed-step trajectory record. states row k is x(t_k); inputs row k is
// u(t_k). Realized energy integrates |u|^2 by Simpson quadrature on the
// half-step samples gathered during integration.
struct Trajectory {
    Eigen::VectorXd times;
    Eigen::MatrixXd states;
    Eigen::MatrixXd inputs;
    double realized_energy = 0.0;
};

using ControlFn = std::function<Eigen::VectorXd(double)>;

// Classical fixed-step RK4 for x' = A x + B u(t), x(0) = x0.
// Requires h <= t_f / 1000; throws NumericError naming the time of blowup
// when the state leaves the representable range.
Trajectory integrate(const SystemMatrices& sys, const ControlFn& control, double t_f, double h,
                     const Eigen::VectorXd& x0);
Trajectory integrate(const SystemMatrices& sys, const ControlFn& control, double t_f, double h);

// End-to-end check for one herding node: dynamics -> Gramian -> orthant
// QP -> control synthesis -> integration.
struct HerdingVerification {
    int herding_node = -1;
    double d = 0.0;
    double t_f = 0.0;
    double h = 0.0;
    double predicted_energy = 0.0;  // J from the infinite-horizon optimum
    double realized_energy = 0.0;
    double terminal_margin = 0.0;  // min_i x_i(t_f) - d
    double energy_ratio = 0.0;     // realized / predicted
    bool pass = false;
    Eigen::VectorXd terminal_state;
    Trajectory trajectory;
};

// t_f <= 0 selects 40 / |spectral abscissa|; h <= 0 selects the largest
// step meeting both the grid-density precondition and the integrator's
// stability envelope. Pass criteria: terminal margin >= -1e-3 * d and
// energy ratio in [0.99, 1.02]. Throws InfeasibleError when the herding
// node cannot reach every node.
HerdingVerification verify_herding(const Graph& g, int herding_node, double d,
                                   double t_f = -1.0, double h = -1.0,
                                   double rank_cutoff = -1.0);

}  // namespace herd
