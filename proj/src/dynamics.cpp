#include "herd/dynamics.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <iostream>

#include "herd/errors.hpp"

namespace herd {

namespace {

constexpr double kHurwitzTol = 1e-10;

// One-time Schur (or symmetric eigen) factorization of A, reusable for the
// refinement solves of A X + X A^T = -Q.
class LyapunovFactorization {
public:
    explicit LyapunovFactorization(const Eigen::MatrixXd& A) {
        const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
        symmetric_ = asym <= 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff());
        if (symmetric_) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
            if (eig.info() != Eigen::Success)
                throw NumericError("lyapunov_gramian: symmetric eigendecomposition failed");
            basis_ = eig.eigenvectors();
            eigenvalues_ = eig.eigenvalues();
        } else {
            Eigen::ComplexSchur<Eigen::MatrixXcd> schur(A.cast<std::complex<double>>());
            if (schur.info() != Eigen::Success)
                throw NumericError("lyapunov_gramian: Schur decomposition failed");
            unitary_ = schur.matrixU();
            triangular_ = schur.matrixT();
        }
    }

    // Solve A X + X A^T = -Q for symmetric Q.
    Eigen::MatrixXd solve(const Eigen::MatrixXd& Q) const {
        if (symmetric_) {
            // A = U diag(a) U^T: X_ij = -(U^T Q U)_ij / (a_i + a_j).
            Eigen::MatrixXd C = basis_.transpose() * Q * basis_;
            for (Eigen::Index i = 0; i < C.rows(); ++i)
                for (Eigen::Index j = 0; j < C.cols(); ++j)
                    C(i, j) /= -(eigenvalues_(i) + eigenvalues_(j));
            return basis_ * C * basis_.transpose();
        }
        // A = U T U^*: solve T Y + Y T^* = -U^* Q U column by column,
        // back to front; each column needs one triangular solve.
        const Eigen::Index n = triangular_.rows();
        Eigen::MatrixXcd C = -(unitary_.adjoint() * Q.cast<std::complex<double>>() * unitary_);
        Eigen::MatrixXcd Y(n, n);
        Eigen::MatrixXcd shifted(n, n);
        for (Eigen::Index k = n - 1; k >= 0; --k) {
            Eigen::VectorXcd rhs = C.col(k);
            for (Eigen::Index j = k + 1; j < n; ++j)
                rhs -= std::conj(triangular_(k, j)) * Y.col(j);
            shifted = triangular_;
            shifted.diagonal().array() += std::conj(triangular_(k, k));
            Y.col(k) = shifted.triangularView<Eigen::Upper>().solve(rhs);
        }
        return (unitary_ * Y * unitary_.adjoint()).real();
    }

private:
    bool symmetric_ = false;
    Eigen::MatrixXd basis_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd unitary_;
    Eigen::MatrixXcd triangular_;
};

}  // namespace

SystemMatrices taylor_consensus(const Graph& g, int herding_node) {
    const int n = g.node_count();
    if (n == 0) throw std::invalid_argument("taylor_consensus: empty graph");
    if (herding_node < 0 || herding_node >= n)
        throw std::invalid_argument("taylor_consensus: herding node out of range");

    SystemMatrices sys;
    sys.A = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (const auto& [k, w] : g.in_neighbors(j)) {
            sys.A(j, k) += w;
            sys.A(j, j) -= w;
        }
    sys.A(herding_node, herding_node) -= 1.0;
    sys.B = Eigen::MatrixXd::Zero(n, 1);
    sys.B(herding_node, 0) = 1.0;
    sys.herding_node = herding_node;
    return sys;
}

StabilityReport is_hurwitz(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("is_hurwitz: matrix not square");
    Eigen::EigenSolver<Eigen::MatrixXd> eig(A, /*computeEigenvectors=*/false);
    if (eig.info() != Eigen::Success)
        throw NumericError("is_hurwitz: eigenvalue iteration did not converge");
    StabilityReport rep;
    rep.spectral_abscissa = eig.eigenvalues().real().maxCoeff();
    rep.hurwitz = rep.spectral_abscissa < -kHurwitzTol;
    return rep;
}

Gramian lyapunov_gramian(const SystemMatrices& sys) {
    const StabilityReport stab = is_hurwitz(sys.A);
    if (!stab.hurwitz)
        throw NumericError("lyapunov_gramian: A is not Hurwitz (spectral abscissa " +
                           std::to_string(stab.spectral_abscissa) + ")");

    const Eigen::MatrixXd Q = sys.B * sys.B.transpose();
    const double q_norm = Q.norm();
    Gramian gram;
    if (q_norm == 0.0) {
        gram.W = Eigen::MatrixXd::Zero(sys.A.rows(), sys.A.cols());
        return gram;
    }

    const LyapunovFactorization fact(sys.A);
    Eigen::MatrixXd W = fact.solve(Q);
    W = 0.5 * (W + W.transpose()).eval();

    double residual = lyapunov_residual(sys.A, W, sys.B);
    for (int pass = 0; pass < 3 && residual > 1e-9 * q_norm; ++pass) {
        const Eigen::MatrixXd R = sys.A * W + W * sys.A.transpose() + Q;
        Eigen::MatrixXd delta = fact.solve(R);
        W += 0.5 * (delta + delta.transpose());
        residual = lyapunov_residual(sys.A, W, sys.B);
    }
    if (residual > 1e-8 * q_norm)
        std::cerr << "[herd] warning: ill-conditioned Lyapunov solve, residual " << residual
                  << " vs |BB^T| " << q_norm << "\n";

    gram.W = std::move(W);
    gram.residual = residual;
    return gram;
}

Gramian finite_gramian_quadrature(const SystemMatrices& sys, double t_f, int steps) {
    if (!(t_f > 0.0)) throw std::invalid_argument("finite_gramian_quadrature: t_f must be positive");
    if (steps < 100) throw std::invalid_argument("finite_gramian_quadrature: steps must be >= 100");
    if (steps % 2) ++steps;

    const double h = t_f / steps;
    const Eigen::MatrixXd M = expm(sys.A * h);
    Eigen::MatrixXd G = sys.B;  // e^{At_k} B, advanced by one matvec per step
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(sys.A.rows(), sys.A.rows());
    for (int k = 0; k <= steps; ++k) {
        const double weight = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        W.selfadjointView<Eigen::Lower>().rankUpdate(G, weight);
        if (k < steps) G = M * G;
    }
    Gramian gram;
    gram.W = Eigen::MatrixXd(W.selfadjointView<Eigen::Lower>()) * (h / 3.0);
    gram.horizon = t_f;
    return gram;
}

double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& W,
                         const Eigen::MatrixXd& B) {
    return (A * W + W * A.transpose() + B * B.transpose()).norm();
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& A) {
    return A.exp();
}

}  // namespace herd
