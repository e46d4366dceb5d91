#pragma once

#include "netmod/network.hpp"
#include "netmod/stable.hpp"

namespace netmod {

// Spectral factorization of A = I - L plus the cached matrices needed to
// evaluate coherence changes for every candidate edge addition.
struct LaplacianKernel {
    Matrix U;        // orthogonal eigenvectors; column n-1 pinned to 1/sqrt(n)
    Vector lambda;   // ascending eigenvalues of A, lambda(n-1) == 1
    Matrix lpinv;    // L^dagger
    Matrix mplus;    // (I + A)^{-1}
    Matrix coh_pinv;     // (I - A^2)^dagger
    Matrix sandwich1;    // (I+A)^{-1} (I-A)^dagger (I+A)^{-1}
    Matrix sandwich2;    // (I-A)^dagger (I+A)^{-1} (I-A)^dagger
    Matrix A;
    std::vector<int> inputs;
    std::vector<int> outputs;

    int n() const { return static_cast<int>(A.rows()); }
    double effective_resistance(int s, int t) const;
};

struct DisplacementSystem {
    LinearSystem sys;  // A_J = (I-J)A, B_J = (I-J)E_K, C = E_O^T
};

struct CoherenceReport {
    double baseline = 0.0;
    double w = 0.0;
    Matrix q;  // q(t,s) = coherence delta for addition {(s,t), w}
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> admissible;
};

struct GreedyGrowResult {
    std::vector<EdgeMod> mods;
    std::vector<double> trajectory;  // coherence after each step, incl. initial
    int diameter_before = 0;
    int diameter_after = 0;
};

LaplacianKernel build_laplacian_kernel(const Network& net);

DisplacementSystem displacement(const Network& net);

// Pseudo controllability Gramian of the displacement system.
Gramian pseudo_gramian(const DisplacementSystem& dsys);

// Hinf norm of the displacement system: sigma_max(E_O^T (L^dagger + J) E_K).
double hinf_displacement(const LaplacianKernel& k);

// Upper bound on the Hinf norm of the displacement delta system for the
// edge addition {(s,t), w}.
double delta_hinf_upper_bound(const LaplacianKernel& k, int s, int t, double w);

// Network coherence: sum_{i<n} 1/(1 - lambda_i^2). Requires all-node
// inputs and outputs.
double coherence(const LaplacianKernel& k);

// Exact coherence change for the edge addition {(s,t), w}.
double coherence_delta(const LaplacianKernel& k, int s, int t, double w);

CoherenceReport batch_coherence_delta(const LaplacianKernel& k, double w,
                                      int jobs = 1);

GreedyGrowResult greedy_grow(const Network& net, double w, int budget);

}  // namespace netmod
