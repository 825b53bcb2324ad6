#include "herd/sim.hpp"

#include <cmath>
#include <sstream>

#include "herd/errors.hpp"
#include "herd/herdability.hpp"

namespace herd {

Trajectory integrate(const SystemMatrices& sys, const ControlFn& control, double t_f, double h,
                     const Eigen::VectorXd& x0) {
    if (!(t_f > 0.0)) throw std::invalid_argument("integrate: t_f must be positive");
    if (!(h > 0.0) || h > t_f / 1000.0)
        throw std::invalid_argument("integrate: step must satisfy 0 < h <= t_f/1000");
    const int n = static_cast<int>(sys.A.rows());
    if (x0.size() != n) throw std::invalid_argument("integrate: x0 dimension mismatch");

    const int steps = std::max(1000, static_cast<int>(std::llround(t_f / h)));
    const double dt = t_f / steps;

    Trajectory traj;
    traj.times.resize(steps + 1);
    traj.states.resize(steps + 1, n);
    traj.inputs.resize(steps + 1, sys.B.cols());

    Eigen::VectorXd x = x0;
    Eigen::VectorXd u_left = control(0.0);
    traj.times(0) = 0.0;
    traj.states.row(0) = x.transpose();
    traj.inputs.row(0) = u_left.transpose();

    double energy = 0.0;
    const auto f = [&](const Eigen::VectorXd& state, const Eigen::VectorXd& input) {
        return (sys.A * state + sys.B * input).eval();
    };
    for (int k = 0; k < steps; ++k) {
        const double t = k * dt;
        const Eigen::VectorXd u_mid = control(t + dt / 2.0);
        const Eigen::VectorXd u_right = control(t + dt);

        const Eigen::VectorXd k1 = f(x, u_left);
        const Eigen::VectorXd k2 = f(x + (dt / 2.0) * k1, u_mid);
        const Eigen::VectorXd k3 = f(x + (dt / 2.0) * k2, u_mid);
        const Eigen::VectorXd k4 = f(x + dt * k3, u_right);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.allFinite()) {
            std::ostringstream msg;
            msg << "integrate: state became non-finite at t = " << (t + dt);
            throw NumericError(msg.str());
        }

        energy += (dt / 6.0) *
                  (u_left.squaredNorm() + 4.0 * u_mid.squaredNorm() + u_right.squaredNorm());
        traj.times(k + 1) = t + dt;
        traj.states.row(k + 1) = x.transpose();
        traj.inputs.row(k + 1) = u_right.transpose();
        u_left = u_right;
    }
    traj.realized_energy = energy;
    return traj;
}

Trajectory integrate(const SystemMatrices& sys, const ControlFn& control, double t_f, double h) {
    return integrate(sys, control, t_f, h, Eigen::VectorXd::Zero(sys.A.rows()));
}

HerdingVerification verify_herding(const Graph& g, int herding_node, double d, double t_f,
                                   double h, double rank_cutoff) {
    if (!(d > 0.0)) throw std::invalid_argument("verify_herding: d must be positive");
    const HerdabilityCheck check = is_herdable(g, {herding_node});
    if (!check.herdable) {
        std::ostringstream msg;
        msg << "verify_herding: node " << herding_node << " cannot reach node";
        msg << (check.unreached.size() > 1 ? "s" : "");
        for (size_t i = 0; i < check.unreached.size() && i < 8; ++i) msg << ' ' << check.unreached[i];
        throw InfeasibleError(msg.str());
    }

    const SystemMatrices sys = taylor_consensus(g, herding_node);
    const StabilityReport stab = is_hurwitz(sys.A);
    if (!stab.hurwitz)
        throw NumericError("verify_herding: grounded dynamics not Hurwitz, abscissa " +
                           std::to_string(stab.spectral_abscissa));
    if (t_f <= 0.0) t_f = 40.0 / std::abs(stab.spectral_abscissa);
    // the auto step honors both the grid-density precondition and the
    // stability envelope of the fixed-step integrator
    if (h <= 0.0) h = std::min(t_f / 4000.0, 0.5 / sys.A.cwiseAbs().rowwise().sum().maxCoeff());
    // snap to a whole number of steps so the control samples land on the grid
    h = t_f / std::max(1000, static_cast<int>(std::llround(t_f / h)));

    const Gramian gram = lyapunov_gramian(sys);
    const GramianSpectrum spec = spectrum(gram, rank_cutoff);
    const EnergyResult opt = min_energy_to_orthant(spec, d);

    SynthesizedControl synth = synthesize_control(sys, gram, opt.x_f, t_f);
    synth.signal.prepare_grid(h / 2.0);

    HerdingVerification record;
    record.herding_node = herding_node;
    record.d = d;
    record.t_f = t_f;
    record.h = h;
    record.predicted_energy = opt.energy;
    record.trajectory =
        integrate(sys, [&](double t) { return synth.signal(t); }, t_f, h);
    record.realized_energy = record.trajectory.realized_energy;
    record.terminal_state = record.trajectory.states.row(record.trajectory.states.rows() - 1);
    record.terminal_margin = record.terminal_state.minCoeff() - d;
    record.energy_ratio = record.realized_energy / record.predicted_energy;
    record.pass = record.terminal_margin >= -1e-3 * d && record.energy_ratio >= 0.99 &&
                  record.energy_ratio <= 1.02;
    return record;
}

}  // namespace herd
