#include "herd/energy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "herd/errors.hpp"

namespace herd {

namespace {

constexpr double kFeasibilityThreshold = 1e-8;  // phase-1 optimum above this = infeasible
constexpr double kMultiplierTol = 1e-10;

// Dense two-phase simplex with Bland's rule for
//     min c^T z   s.t.   M z = b, z >= 0,  b >= 0.
// Small and boring on purpose; only the feasibility phase uses it.
class Simplex {
public:
    Simplex(Eigen::MatrixXd M, Eigen::VectorXd b, Eigen::VectorXd c)
        : M_(std::move(M)), b_(std::move(b)), c_(std::move(c)) {}

    // Returns false when the objective is unbounded below (cannot happen
    // for the feasibility phase, which is boxed).
    bool solve() {
        const Eigen::Index rows = M_.rows();
        const Eigen::Index cols = M_.cols();
        // Phase A: artificial variables form the starting basis.
        Eigen::MatrixXd T(rows + 1, cols + rows + 1);
        T.setZero();
        T.block(0, 0, rows, cols) = M_;
        T.block(0, cols, rows, rows).setIdentity();
        T.col(cols + rows).head(rows) = b_;
        basis_.resize(rows);
        for (Eigen::Index i = 0; i < rows; ++i) basis_[i] = cols + i;
        // Phase-A cost row: minimize the sum of artificials.
        for (Eigen::Index i = 0; i < rows; ++i) T.row(rows) -= T.row(i);
        T.row(rows).segment(cols, rows).setZero();
        if (!iterate(T, cols + rows)) return false;

        // Phase B on the original columns.
        T.row(rows).setZero();
        T.row(rows).head(cols) = c_.transpose();
        for (Eigen::Index i = 0; i < rows; ++i)
            if (basis_[i] < cols) T.row(rows) -= c_(basis_[i]) * T.row(i);
        if (!iterate(T, cols)) return false;

        solution_ = Eigen::VectorXd::Zero(cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            if (basis_[i] < cols) solution_(basis_[i]) = T(i, cols + rows);
        objective_ = -T(rows, cols + rows);
        // Reduced costs of the original columns (duals live here for the
        // caller's certificate).
        reduced_costs_ = T.row(rows).head(cols);
        return true;
    }

    const Eigen::VectorXd& solution() const { return solution_; }
    double objective() const { return objective_; }
    const Eigen::VectorXd& reduced_costs() const { return reduced_costs_; }

private:
    bool iterate(Eigen::MatrixXd& T, Eigen::Index usable_cols) {
        const Eigen::Index rows = M_.rows();
        const Eigen::Index rhs = T.cols() - 1;
        while (true) {
            Eigen::Index entering = -1;
            for (Eigen::Index j = 0; j < usable_cols; ++j)
                if (T(rows, j) < -1e-9) { entering = j; break; }  // Bland: lowest index
            if (entering == -1) return true;
            Eigen::Index leaving = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < rows; ++i) {
                if (T(i, entering) <= 1e-11) continue;
                const double ratio = T(i, rhs) / T(i, entering);
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leaving == -1 || basis_[i] < basis_[leaving])))
                    best_ratio = ratio, leaving = i;
            }
            if (leaving == -1) return false;  // unbounded
            T.row(leaving) /= T(leaving, entering);
            for (Eigen::Index i = 0; i <= rows; ++i) {
                if (i == leaving) continue;
                const double factor = T(i, entering);
                if (factor != 0.0) T.row(i) -= factor * T.row(leaving);
            }
            basis_[leaving] = entering;
        }
    }

    Eigen::MatrixXd M_;
    Eigen::VectorXd b_;
    Eigen::VectorXd c_;
    std::vector<Eigen::Index> basis_;
    Eigen::VectorXd solution_;
    double objective_ = 0.0;
    Eigen::VectorXd reduced_costs_;
};

// Feasibility phase: minimize max_i (d - v_i^T alpha), boxed below at -1 so
// the LP stays bounded. The optimum is -1 exactly when the orthant meets
// the range with interior, and d when it cannot be reached at all.
struct PhaseOneOutcome {
    bool feasible = false;
    Eigen::VectorXd alpha;
    double optimum = 0.0;
    std::string certificate;
};

PhaseOneOutcome phase_one(const Eigen::MatrixXd& V, double d) {
    const Eigen::Index n = V.rows();
    const Eigen::Index r = V.cols();
    // Variables z = [a+ (r), a- (r), sigma (1), slack (n)], all >= 0, with
    // sigma = s + 1:  V a+ - V a- + 1 sigma - slack = (d + 1) 1.
    Eigen::MatrixXd M(n, 2 * r + 1 + n);
    M.setZero();
    M.block(0, 0, n, r) = V;
    M.block(0, r, n, r) = -V;
    M.col(2 * r).setOnes();
    M.block(0, 2 * r + 1, n, n) = -Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Constant(n, d + 1.0);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * r + 1 + n);
    c(2 * r) = 1.0;

    Simplex lp(std::move(M), std::move(b), std::move(c));
    if (!lp.solve()) throw NumericError("feasibility phase: simplex failed to terminate");

    PhaseOneOutcome out;
    out.optimum = lp.objective() - 1.0;  // back to s
    if (out.optimum <= kFeasibilityThreshold) {
        out.feasible = true;
        out.alpha = lp.solution().head(r) - lp.solution().segment(r, r);
    } else {
        // Dual certificate: the reduced costs over the slack columns give
        // mu >= 0 with V^T mu ~ 0 and 1^T mu = 1.
        Eigen::VectorXd mu = lp.reduced_costs().tail(n);
        std::ostringstream msg;
        msg << "terminal orthant does not intersect range(W): phase-1 optimum " << out.optimum
            << "; certificate mu >= 0 with |V^T mu|_inf = " << (V.transpose() * mu).cwiseAbs().maxCoeff()
            << ", 1^T mu = " << mu.sum();
        out.certificate = msg.str();
    }
    return out;
}

struct WorkingSetSolve {
    Eigen::VectorXd alpha;
    Eigen::VectorXd multipliers;  // aligned with the working set
};

// Equality-constrained subproblem on the working set S:
//     min alpha^T D^{-1} alpha  s.t.  V_S alpha = d 1.
// Eliminating alpha = (1/2) D V_S^T mu reduces it to W_SS mu = 2 d 1 with
// W_SS the Gramian reconstruction restricted to S.
WorkingSetSolve solve_working_set(const Eigen::MatrixXd& V, const Eigen::VectorXd& lam,
                                  const Eigen::MatrixXd& Wr, const std::vector<int>& ws,
                                  double d) {
    WorkingSetSolve out;
    const Eigen::Index r = V.cols();
    if (ws.empty()) {
        out.alpha = Eigen::VectorXd::Zero(r);
        return out;
    }
    const Eigen::Index k = static_cast<Eigen::Index>(ws.size());
    Eigen::MatrixXd Wss(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) Wss(a, b) = Wr(ws[a], ws[b]);
    // Minimum-norm solve keeps degenerate working sets harmless.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Wss);
    out.multipliers = cod.solve(Eigen::VectorXd::Constant(k, 2.0 * d));
    Eigen::VectorXd vt_mu = Eigen::VectorXd::Zero(r);
    for (Eigen::Index a = 0; a < k; ++a) vt_mu += out.multipliers(a) * V.row(ws[a]).transpose();
    out.alpha = 0.5 * lam.asDiagonal() * vt_mu;
    return out;
}

std::string pinned_nodes_message(const std::vector<int>& pinned) {
    std::ostringstream msg;
    msg << "terminal orthant does not intersect range(W): state component";
    msg << (pinned.size() > 1 ? "s" : "");
    for (size_t i = 0; i < pinned.size() && i < 8; ++i) msg << ' ' << pinned[i];
    if (pinned.size() > 8) msg << " ...";
    msg << " pinned to 0 on the reachable subspace";
    return msg.str();
}

}  // namespace

double default_rank_cutoff(int n) { return 1e-9 * n; }

GramianSpectrum spectrum(const Gramian& gram, double relative_cutoff) {
    const Eigen::MatrixXd& W = gram.W;
    if (W.rows() != W.cols()) throw std::invalid_argument("spectrum: W not square");
    const double scale = W.norm();
    if ((W - W.transpose()).norm() > 1e-10 * std::max(scale, 1e-300))
        throw std::invalid_argument("spectrum: W not symmetric within tolerance");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(W);
    if (eig.info() != Eigen::Success) throw NumericError("spectrum: eigendecomposition failed");

    const Eigen::Index n = W.rows();
    GramianSpectrum spec;
    spec.eigenvalues = eig.eigenvalues().reverse();
    spec.eigenvectors = eig.eigenvectors().rowwise().reverse();

    if (spec.eigenvalues(n - 1) < -1e-8 * std::max(scale, 1e-300))
        throw std::invalid_argument("spectrum: W not positive semidefinite within tolerance");

    const double lam_max = spec.eigenvalues(0);
    const double factor = relative_cutoff < 0 ? default_rank_cutoff(static_cast<int>(n))
                                              : relative_cutoff;
    spec.cutoff = lam_max > 0 ? factor * lam_max : 0.0;
    spec.rank = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (spec.eigenvalues(i) > spec.cutoff) ++spec.rank;
    return spec;
}

EnergyResult min_energy_to_orthant(const GramianSpectrum& spec, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("min_energy_to_orthant: d must be positive");
    if (spec.rank < 1)
        throw InfeasibleError(
            "terminal orthant does not intersect range(W): Gramian has numerical rank 0");

    const Eigen::Index n = spec.dim();
    const Eigen::MatrixXd V = spec.range_basis();
    const Eigen::VectorXd lam = spec.range_eigenvalues();
    const Eigen::MatrixXd Wr = V * lam.asDiagonal() * V.transpose();

    std::vector<int> pinned;
    for (Eigen::Index i = 0; i < n; ++i)
        if (V.row(i).squaredNorm() <= 1e-20) pinned.push_back(static_cast<int>(i));
    if (!pinned.empty()) throw InfeasibleError(pinned_nodes_message(pinned));

    // Feasible start, cheapest first: the analytic solution of the single
    // hardest constraint, then the projected all-ones direction, then the
    // full feasibility phase.
    Eigen::VectorXd alpha;
    std::vector<int> working_set;
    bool started = false;
    {
        Eigen::Index hardest = 0;
        Wr.diagonal().minCoeff(&hardest);
        const Eigen::VectorXd candidate =
            (d / Wr(hardest, hardest)) * (lam.asDiagonal() * V.row(hardest).transpose());
        if (((V * candidate).array() >= d - 1e-12 * std::max(1.0, d)).all()) {
            alpha = candidate;
            working_set = {static_cast<int>(hardest)};
            started = true;
        }
    }
    if (!started) {
        const Eigen::VectorXd q = V.transpose() * Eigen::VectorXd::Ones(n);
        const Eigen::VectorXd y = V * q;
        const double m = y.minCoeff();
        if (m > 1e-9) {
            alpha = (d * (1.0 + 1e-6) / m) * q;
            started = true;
        }
    }
    if (!started) {
        PhaseOneOutcome phase = phase_one(V, d);
        if (!phase.feasible) throw InfeasibleError(phase.certificate);
        alpha = phase.alpha;
    }

    // Primal active set. The working-set solve is exact, so each outer
    // iteration either moves to the subproblem optimum or hits a blocking
    // constraint and grows the set.
    const int iteration_cap = 100 * static_cast<int>(n);
    Eigen::VectorXd multipliers;
    bool converged = false;
    for (int iter = 0; iter < iteration_cap; ++iter) {
        WorkingSetSolve sub = solve_working_set(V, lam, Wr, working_set, d);
        const Eigen::VectorXd step = sub.alpha - alpha;
        if (step.norm() <= 1e-12 * (1.0 + alpha.norm())) {
            if (working_set.empty()) { converged = true; break; }
            int drop = -1;
            double most_negative = -kMultiplierTol * (1.0 + sub.multipliers.cwiseAbs().maxCoeff());
            for (Eigen::Index a = 0; a < sub.multipliers.size(); ++a)
                if (sub.multipliers(a) < most_negative)
                    most_negative = sub.multipliers(a), drop = static_cast<int>(a);
            if (drop == -1) {
                multipliers = sub.multipliers;
                converged = true;
                break;
            }
            working_set.erase(working_set.begin() + drop);
            continue;
        }
        // Ratio test over constraints outside the working set.
        double limit = 1.0;
        int blocker = -1;
        const Eigen::VectorXd directional = V * step;
        const Eigen::VectorXd margin = V * alpha;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::binary_search(working_set.begin(), working_set.end(), static_cast<int>(i)))
                continue;
            if (directional(i) >= -1e-13) continue;
            const double room = std::max(margin(i) - d, 0.0);
            const double ratio = room / (-directional(i));
            if (ratio < limit) limit = ratio, blocker = static_cast<int>(i);
        }
        alpha += limit * step;
        if (blocker >= 0) {
            working_set.insert(
                std::upper_bound(working_set.begin(), working_set.end(), blocker), blocker);
        }
    }
    if (!converged)
        throw NumericError("min_energy_to_orthant: active-set iteration cap exceeded (" +
                           std::to_string(iteration_cap) + ")");

    EnergyResult result;
    result.d = d;
    result.alpha = alpha;
    result.x_f = V * alpha;
    result.energy = (alpha.array().square() / lam.array()).sum();

    // KKT residual: stationarity holds by construction through the
    // multipliers; what can degrade is primal feasibility of the working-set
    // solve and complementarity.
    const Eigen::VectorXd slack = result.x_f.array() - d;
    double kkt = std::max(0.0, -slack.minCoeff());
    for (size_t a = 0; a < working_set.size(); ++a) {
        const double mu = multipliers.size() ? multipliers(static_cast<Eigen::Index>(a)) : 0.0;
        kkt = std::max(kkt, std::abs(mu * slack(working_set[a])));
    }
    result.kkt_residual = kkt;
    if (kkt > 1e-6 * std::max(1.0, d))
        throw NumericError("min_energy_to_orthant: KKT residual " + std::to_string(kkt) +
                           " above tolerance");

    const double tight = 1e-8 * std::max(1.0, d);
    for (Eigen::Index i = 0; i < n; ++i)
        if (slack(i) <= tight) result.active_set.push_back(static_cast<int>(i));
    return result;
}

double min_energy_to_point(const GramianSpectrum& spec, const Eigen::VectorXd& x_f) {
    if (x_f.size() != spec.dim())
        throw std::invalid_argument("min_energy_to_point: dimension mismatch");
    const Eigen::MatrixXd V = spec.range_basis();
    const Eigen::VectorXd coeffs = V.transpose() * x_f;
    const double out_of_range = (x_f - V * coeffs).norm();
    if (out_of_range > 1e-6 * x_f.norm())
        throw std::invalid_argument("min_energy_to_point: x_f outside range(W), residual " +
                                    std::to_string(out_of_range));
    double energy = 0.0;
    for (int i = 0; i < spec.rank; ++i)
        energy += coeffs(i) * coeffs(i) / spec.eigenvalues(i);
    return energy;
}

ControlSignal::ControlSignal(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::VectorXd p, double t_f)
    : A_transpose_(A.transpose()), B_transpose_(B.transpose()), p_(std::move(p)), t_f_(t_f) {
    if (!(t_f > 0.0)) throw std::invalid_argument("ControlSignal: t_f must be positive");
}

void ControlSignal::prepare_grid(double dt) {
    if (!(dt > 0.0) || dt > t_f_) throw std::invalid_argument("ControlSignal: bad grid step");
    const int steps = std::max(1, static_cast<int>(std::llround(t_f_ / dt)));
    grid_dt_ = t_f_ / steps;
    const Eigen::MatrixXd M = expm(A_transpose_ * grid_dt_);
    grid_samples_.assign(steps + 1, Eigen::VectorXd());
    // w(s) = e^{A^T s} p decays forward in s for Hurwitz A, so march the
    // costate from s = 0 and fill u(t) = B^T w(t_f - t) back to front.
    Eigen::VectorXd w = p_;
    for (int k = 0; k <= steps; ++k) {
        grid_samples_[steps - k] = B_transpose_ * w;
        if (k < steps) w = M * w;
    }
}

Eigen::VectorXd ControlSignal::operator()(double t) const {
    const double slack = 1e-9 * std::max(1.0, t_f_);
    if (t < -slack || t > t_f_ + slack)
        throw std::invalid_argument("ControlSignal: t outside [0, t_f]");
    t = std::clamp(t, 0.0, t_f_);
    if (grid_dt_ > 0.0) {
        const double pos = t / grid_dt_;
        const auto idx = static_cast<long>(std::llround(pos));
        if (std::abs(pos - static_cast<double>(idx)) < 1e-6 &&
            idx >= 0 && idx < static_cast<long>(grid_samples_.size()))
            return grid_samples_[static_cast<size_t>(idx)];
    }
    return B_transpose_ * (expm(A_transpose_ * (t_f_ - t)) * p_);
}

SynthesizedControl synthesize_control(const SystemMatrices& sys, const Gramian& gram,
                                      const Eigen::VectorXd& x_f, double t_f) {
    if (!(t_f > 0.0)) throw std::invalid_argument("synthesize_control: t_f must be positive");

    Gramian finite;
    finite.horizon = t_f;
    if (gram.infinite_horizon()) {
        const Eigen::MatrixXd E = expm(sys.A * t_f);
        const Eigen::MatrixXd tail = E * gram.W * E.transpose();
        finite.W = 0.5 * ((gram.W - tail) + (gram.W - tail).transpose());
    } else {
        if (std::abs(gram.horizon - t_f) > 1e-9 * std::max(1.0, t_f))
            throw std::invalid_argument("synthesize_control: Gramian horizon differs from t_f");
        finite.W = gram.W;
    }

    const GramianSpectrum spec = spectrum(finite);
    const Eigen::MatrixXd V = spec.range_basis();
    const Eigen::VectorXd coeffs = V.transpose() * x_f;
    const double out_of_range = (x_f - V * coeffs).norm();
    if (out_of_range > 1e-6 * x_f.norm())
        throw std::invalid_argument("synthesize_control: x_f outside range(W), residual " +
                                    std::to_string(out_of_range));

    SynthesizedControl out;
    out.costate = Eigen::VectorXd::Zero(x_f.size());
    for (int i = 0; i < spec.rank; ++i)
        out.costate += (coeffs(i) / spec.eigenvalues(i)) * spec.eigenvectors.col(i);
    out.predicted_energy = x_f.dot(out.costate);
    out.signal = ControlSignal(sys.A, sys.B, out.costate, t_f);
    return out;
}

}  // namespace herd
