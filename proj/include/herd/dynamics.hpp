#pragma once

#include <Eigen/Core>
#include <limits>

#include "herd/graph.hpp"

namespace herd {

// Grounded consensus system x' = Ax + Bu. A is Metzler with zero row sums
// except at the herding node, whose row sums to -1 (the grounding term).
struct SystemMatrices {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;      // n x m indicator columns
    int herding_node = -1;  // valid when m == 1
};

struct StabilityReport {
    bool hurwitz = false;
    double spectral_abscissa = 0.0;  // max real part of the eigenvalues
};

// Controllability Gramian, symmetric PSD. horizon is +inf for the
// Lyapunov-equation solution, finite for the quadrature form.
struct Gramian {
    Eigen::MatrixXd W;
    double horizon = std::numeric_limits<double>::infinity();
    double residual = 0.0;  // Lyapunov residual of the solve (0 for quadrature)

    bool infinite_horizon() const { return !std::isfinite(horizon); }
};

// Consensus dynamics with an external-input grounding term at the herding
// node: A = -L_in - e_i e_i^T with L_in the weighted in-Laplacian, B = e_i.
SystemMatrices taylor_consensus(const Graph& g, int herding_node);

// Stability test at tolerance 1e-10 on the spectral abscissa.
// Throws NumericError if the eigenvalue iteration fails.
StabilityReport is_hurwitz(const Eigen::MatrixXd& A);

// Infinite-horizon Gramian: solves A W + W A^T + B B^T = 0 via the Schur
// form (symmetric eigenbasis when A is symmetric), with iterative
// refinement. Throws NumericError when A is not Hurwitz; warns on stderr
// if the residual stays above 1e-8 * |BB^T|_F.
Gramian lyapunov_gramian(const SystemMatrices& sys);

// Finite-horizon Gramian by composite Simpson quadrature of
// e^{At} B B^T e^{A^T t} over [0, t_f]. Independent of the Lyapunov path;
// steps is rounded up to an even count, must be >= 100.
Gramian finite_gramian_quadrature(const SystemMatrices& sys, double t_f, int steps);

// Frobenius-norm residual |A W + W A^T + B B^T|_F of a candidate Gramian.
double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& W,
                         const Eigen::MatrixXd& B);

// Dense matrix exponential (scaling-and-squaring Pade).
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

}  // namespace herd
