#include "netmod/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <random>

namespace netmod::oracle {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Oracle-local spectral radius; shares no code with the library paths.
double rho_of(const MatrixXd& A) {
    if (A.size() == 0 || A.isZero(0.0)) return 0.0;
    Eigen::EigenSolver<MatrixXd> es(A, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double freq_gain(const LinearSystem& sys, double theta) {
    const int n = sys.states();
    std::complex<double> z = std::polar(1.0, theta);
    MatrixXcd M = z * MatrixXcd::Identity(n, n) - sys.A.cast<std::complex<double>>();
    MatrixXcd resp = sys.C.cast<std::complex<double>>() *
                     M.partialPivLu().solve(sys.B.cast<std::complex<double>>());
    return resp.jacobiSvd().singularValues()(0);
}

// Fixed-point Lyapunov iteration, one term of the series per step.
MatrixXd lyapunov_fixed_point(const MatrixXd& A, const MatrixXd& Q,
                              double rho) {
    MatrixXd W = Q;
    MatrixXd term = Q;
    double gap = std::max(1.0 - rho * rho, 1e-12);
    for (int it = 0; it < 2000000; ++it) {
        term = (A * term * A.transpose()).eval();
        W += term;
        if (term.norm() / gap < 1e-13 * std::max(1.0, W.norm())) return W;
    }
    throw UnstableSystem("lyapunov_fixed_point: no convergence");
}

}  // namespace

SweepResult hinf_sweep(const LinearSystem& sys, const SweepConfig& cfg) {
    sys.check_dims();
    if (rho_of(sys.A) >= 1.0) throw UnstableSystem("hinf_sweep: rho(A) >= 1");
    if (cfg.grid_points < 64) throw InvariantViolation("gridPoints >= 64");

    SweepResult res;
    double spacing = 2.0 * kPi / cfg.grid_points;
    for (int i = 0; i < cfg.grid_points; ++i) {
        double theta = -kPi + i * spacing;
        double g = freq_gain(sys, theta);
        if (g > res.value) {
            res.value = g;
            res.argmax_theta = theta;
        }
    }
    // one refinement pass around the running maximum
    if (cfg.refinement > 1) {
        double fine = spacing / cfg.refinement;
        double center = res.argmax_theta;
        for (int i = -cfg.refinement; i <= cfg.refinement; ++i) {
            double theta = center + i * fine;
            double g = freq_gain(sys, theta);
            if (g > res.value) {
                res.value = g;
                res.argmax_theta = theta;
            }
        }
        res.grid_spacing = fine;
    } else {
        res.grid_spacing = spacing;
    }
    return res;
}

TruncationResult h2_truncated(const LinearSystem& sys,
                              const TruncationConfig& cfg) {
    sys.check_dims();
    double rho = rho_of(sys.A);
    if (rho >= 1.0) throw UnstableSystem("h2_truncated: rho(A) >= 1");

    // sum of squared impulse-response entries, g(t) = C A^{t-1} B
    TruncationResult res;
    MatrixXd P = sys.B;
    double sum = 0.0;
    double gap = std::max(1.0 - rho * rho, 1e-12);
    int horizon = cfg.horizon;
    int t = 0;
    while (true) {
        ++t;
        MatrixXd g = sys.C * P;
        sum += g.squaredNorm();
        P = (sys.A * P).eval();
        double tail = sys.C.squaredNorm() * P.squaredNorm() / gap;
        if (horizon > 0 ? t >= horizon
                        : (tail < cfg.target_tail * std::max(1.0, sum) ||
                           t >= 500000)) {
            res.tail_bound = tail;
            break;
        }
    }
    res.value = sum;

    if (cfg.cross_check) {
        // independent cross-evaluation through the Gramian trace
        MatrixXd W =
            lyapunov_fixed_point(sys.A, sys.B * sys.B.transpose(), rho);
        double via_gramian = (sys.C * W * sys.C.transpose()).trace();
        if (std::abs(via_gramian - res.value) >
            1e-8 * std::max(1.0, res.value) + res.tail_bound + 1e-10)
            throw Error("h2_truncated: sum and Gramian paths disagree");
    }
    return res;
}

std::vector<VectorXd> simulate(const LinearSystem& sys,
                               const std::vector<VectorXd>& input,
                               int horizon) {
    sys.check_dims();
    std::vector<VectorXd> out;
    out.reserve(horizon);
    VectorXd x = VectorXd::Zero(sys.states());
    for (int t = 0; t < horizon; ++t) {
        out.push_back(sys.C * x);
        VectorXd u = t < static_cast<int>(input.size())
                         ? input[t]
                         : VectorXd::Zero(sys.inputs());
        if (u.size() != sys.inputs())
            throw DimensionMismatch("simulate: input dimension mismatch");
        x = sys.A * x + sys.B * u;
    }
    return out;
}

MonteCarloResult coherence_monte_carlo(const Network& net, int trials,
                                       int horizon, std::uint64_t seed) {
    if (net.kind() != NetworkKind::Laplacian)
        throw InvariantViolation("coherence_monte_carlo: Laplacian kind only");
    const int n = net.n();
    MatrixXd A = net.state_matrix();
    MatrixXd ImJ = MatrixXd::Identity(n, n) - MatrixXd::Constant(n, n, 1.0 / n);
    if (rho_of(ImJ * A) >= 1.0)
        throw UnstableSystem("displacement dynamics not stable");
    double decay = std::pow(rho_of(ImJ * A), horizon);
    if (decay >= 1e-3)
        throw HorizonTooShort("need rho(A_J)^T < 1e-3");

    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };

    double sum = 0.0, sum2 = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        VectorXd x = VectorXd::Zero(n);
        for (int t = 0; t < horizon; ++t) {
            VectorXd noise(n);
            for (int i = 0; i < n; ++i) noise(i) = draw();
            x = A * x + noise;
        }
        double mean = x.mean();
        double dev = (x.array() - mean).square().sum();
        sum += dev;
        sum2 += dev * dev;
    }
    MonteCarloResult res;
    res.estimate = sum / trials;
    double var = std::max(0.0, sum2 / trials - res.estimate * res.estimate);
    res.standard_error = std::sqrt(var / trials);
    return res;
}

TruncationResult coherence_truncated(const Network& net,
                                     const TruncationConfig& cfg) {
    const int n = net.n();
    MatrixXd ImJ = MatrixXd::Identity(n, n) - MatrixXd::Constant(n, n, 1.0 / n);
    LinearSystem dsys{ImJ * net.state_matrix(), ImJ,
                      MatrixXd::Identity(n, n)};
    return h2_truncated(dsys, cfg);
}

RebuildReport rebuild_and_measure(const Network& net, const EdgeMod& mod) {
    RebuildReport rep;
    if (net.kind() == NetworkKind::DirectStable) {
        MatrixXd Abar = net.adjacency();
        Abar(mod.t, mod.s) += mod.w;
        rep.modified_stable = rho_of(Abar) < 1.0;
        if (!rep.modified_stable) return rep;

        const int n = net.n();
        LinearSystem delta;
        delta.A = MatrixXd::Zero(2 * n, 2 * n);
        delta.A.topLeftCorner(n, n) = Abar;
        delta.A.bottomRightCorner(n, n) = net.adjacency();
        delta.B = MatrixXd::Zero(2 * n, static_cast<int>(net.inputs().size()));
        delta.B.topRows(n) = net.input_matrix();
        delta.B.bottomRows(n) = net.input_matrix();
        delta.C = MatrixXd::Zero(static_cast<int>(net.outputs().size()), 2 * n);
        delta.C.leftCols(n) = net.output_matrix();
        delta.C.rightCols(n) = -net.output_matrix();

        rep.exact_hinf = hinf_sweep(delta).value;
        TruncationResult h2 = h2_truncated(delta);
        rep.exact_h2 = h2.value;
        rep.h2_tail = h2.tail_bound;
        return rep;
    }

    Network modified = apply_mod(net, mod);
    rep.modified_stable = true;
    TruncationResult before = coherence_truncated(net);
    TruncationResult after = coherence_truncated(modified);
    rep.exact_coherence_delta = after.value - before.value;
    rep.h2_tail = before.tail_bound + after.tail_bound;
    return rep;
}

}  // namespace netmod::oracle
