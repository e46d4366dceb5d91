#include "netmod/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <queue>

namespace netmod::linalg {

double spectral_radius(const MatrixXd& A, double tol) {
    const int n = static_cast<int>(A.rows());
    if (n == 0) return 0.0;
    if (A.isZero(0.0)) return 0.0;

    // Power iteration on |A| works for the nonnegative matrices used
    // throughout; stall or oscillation falls through to a full solve.
    VectorXd v = VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    double est = 0.0;
    for (int it = 0; it < 5000; ++it) {
        VectorXd w = A * v;
        double norm = w.norm();
        if (norm == 0.0) break;
        w /= norm;
        double next = (A * w).dot(w);
        if (std::abs(next - est) <= tol * std::max(1.0, std::abs(next)) &&
            it > 3) {
            // Rayleigh quotient may undershoot for non-normal A; accept only
            // if the residual is tiny, else fall through.
            VectorXd r = A * w - next * w;
            if (r.norm() <= 1e-10 * std::max(1.0, std::abs(next)))
                return std::abs(next);
        }
        est = next;
        v = w;
    }
    Eigen::EigenSolver<MatrixXd> es(A, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double sym_eig_max(const MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

MatrixXd solve_lyapunov(const MatrixXd& A, const MatrixXd& Q, double rel_tol,
                        int max_iter) {
    MatrixXd W = 0.5 * (Q + Q.transpose());
    MatrixXd M = A;
    for (int it = 0; it < max_iter; ++it) {
        MatrixXd inc = M * W * M.transpose();
        MatrixXd next = W + inc;
        next = 0.5 * (next + next.transpose()).eval();
        double rel = inc.norm() / std::max(next.norm(), 1e-300);
        W = next;
        if (rel < rel_tol) return W;
        M = (M * M).eval();
    }
    throw std::runtime_error("solve_lyapunov: no convergence (rho(A) >= 1?)");
}

bool connected_undirected(const MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
            if (!seen[v] && (A(u, v) != 0.0 || A(v, u) != 0.0)) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
        }
    }
    return count == n;
}

double uniform01(std::mt19937_64& rng) {
    // (0, 1]: 53-bit mantissa draw, shifted away from zero.
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace netmod::linalg
