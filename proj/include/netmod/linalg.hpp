#pragma once

#include <Eigen/Dense>
#include <random>

namespace netmod::linalg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Spectral radius of a general square matrix. Power iteration with a full
// eigendecomposition fallback when the iteration stalls.
double spectral_radius(const MatrixXd& A, double tol = 1e-13);

// Largest eigenvalue of a symmetric matrix.
double sym_eig_max(const MatrixXd& S);

// Solve A W A^T - W + Q = 0 for rho(A) < 1 by iterative doubling:
// W_{k+1} = W_k + A_k W_k A_k^T, A_{k+1} = A_k^2. Symmetrized each step.
MatrixXd solve_lyapunov(const MatrixXd& A, const MatrixXd& Q,
                        double rel_tol = 1e-13, int max_iter = 200);

// Connectivity of the graph whose undirected skeleton is the nonzero
// pattern of A (BFS).
bool connected_undirected(const MatrixXd& A);

// Deterministic uniform double in (0, 1], independent of the standard
// library's distribution implementations.
double uniform01(std::mt19937_64& rng);

// Standard normal via Box-Muller on uniform01 draws.
double gaussian(std::mt19937_64& rng);

}  // namespace netmod::linalg
