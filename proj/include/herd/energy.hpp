#pragma once

#include <Eigen/Core>
#include <vector>

#include "herd/dynamics.hpp"

namespace herd {

// Eigendecomposition of a Gramian with a numerical-rank decision.
// Eigenpairs are sorted by descending eigenvalue; the first `rank` columns
// of `eigenvectors` form an orthonormal basis of the numerical range.
struct GramianSpectrum {
    Eigen::VectorXd eigenvalues;   // all of them, descending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns, same order
    int rank = 0;
    double cutoff = 0.0;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    Eigen::Ref<const Eigen::MatrixXd> range_basis() const {
        return eigenvectors.leftCols(rank);
    }
    Eigen::Ref<const Eigen::VectorXd> range_eigenvalues() const {
        return eigenvalues.head(rank);
    }
};

// Minimum-energy solution for steering the origin into the shifted
// positive orthant {x : x_i >= d}.
struct EnergyResult {
    double energy = 0.0;       // J
    Eigen::VectorXd x_f;       // optimal terminal state, = range_basis * alpha
    Eigen::VectorXd alpha;     // coefficients in the Gramian eigenbasis
    double d = 0.0;
    std::vector<int> active_set;  // constraints tight at the optimum
    double kkt_residual = 0.0;
};

// Time-parameterized minimum-energy input u(t) = B^T e^{A^T (t_f - t)} p.
// Off-grid evaluations go through a dense matrix exponential; prepare_grid
// caches samples on a uniform grid via stable forward propagation.
class ControlSignal {
public:
    ControlSignal() = default;
    ControlSignal(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::VectorXd p, double t_f);

    Eigen::VectorXd operator()(double t) const;
    void prepare_grid(double dt);

    double horizon() const { return t_f_; }
    const Eigen::VectorXd& costate() const { return p_; }

private:
    Eigen::MatrixXd A_transpose_;
    Eigen::MatrixXd B_transpose_;
    Eigen::VectorXd p_;
    double t_f_ = 0.0;
    double grid_dt_ = 0.0;
    std::vector<Eigen::VectorXd> grid_samples_;
};

struct SynthesizedControl {
    ControlSignal signal;
    Eigen::VectorXd costate;        // p = W(t_f)^+ x_f
    double predicted_energy = 0.0;  // x_f^T W(t_f)^+ x_f
};

// Default numerical-rank cutoff factor: eigenvalues above
// (1e-9 * n) * lambda_max count toward the range.
double default_rank_cutoff(int n);

// Full symmetric eigendecomposition plus rank decision. relative_cutoff < 0
// selects the default policy. Throws std::invalid_argument when W is not
// symmetric PSD within tolerance.
GramianSpectrum spectrum(const Gramian& gram, double relative_cutoff = -1.0);

// Global optimum of: minimize sum_i alpha_i^2 / lambda_i subject to
// V alpha >= d componentwise, by a primal active-set method on the reduced
// r-dimensional problem. Runs a feasibility phase first and throws
// InfeasibleError with a certificate when the orthant misses the range.
EnergyResult min_energy_to_orthant(const GramianSpectrum& spec, double d);

// x_f^T W^+ x_f in the eigenbasis. Throws std::invalid_argument when x_f
// is outside the range of W (projection residual above 1e-6 relative).
double min_energy_to_point(const GramianSpectrum& spec, const Eigen::VectorXd& x_f);

// Minimum-energy open-loop input reaching x_f at time t_f, built on the
// finite-horizon Gramian at t_f. An infinite-horizon Gramian argument is
// converted via W(t_f) = W - e^{A t_f} W e^{A^T t_f}.
SynthesizedControl synthesize_control(const SystemMatrices& sys, const Gramian& gram,
                                      const Eigen::VectorXd& x_f, double t_f);

}  // namespace herd
