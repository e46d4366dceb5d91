#pragma once

#include "netmod/network.hpp"

#include <cstdint>
#include <utility>
#include <vector>

// Brute-force verifiers, deliberately independent of the closed-form code
// paths in stable.hpp / laplacian.hpp. Nothing here touches the kernels.
namespace netmod::oracle {

struct SweepConfig {
    int grid_points = 4096;
    int refinement = 16;  // local densification factor around the running max
};

struct SweepResult {
    double value = 0.0;
    double grid_spacing = 0.0;
    double argmax_theta = 0.0;
};

struct TruncationConfig {
    int horizon = 0;  // 0: choose from the spectral decay automatically
    double target_tail = 1e-12;
    bool cross_check = true;  // dual-evaluate through the Gramian trace
};

struct TruncationResult {
    double value = 0.0;
    double tail_bound = 0.0;
};

// Max over a frequency grid of sigma_max(C (e^{i theta} I - A)^{-1} B),
// via direct complex solves, with one local refinement pass.
SweepResult hinf_sweep(const LinearSystem& sys, const SweepConfig& cfg = {});

// Truncated impulse-response sum of squares, with a certified tail bound,
// cross-checked against an independently coded fixed-point Lyapunov
// iteration.
TruncationResult h2_truncated(const LinearSystem& sys,
                              const TruncationConfig& cfg = {});

// Iterated state updates from zero initial state.
std::vector<Eigen::VectorXd> simulate(const LinearSystem& sys,
                                      const std::vector<Eigen::VectorXd>& input,
                                      int horizon);

struct MonteCarloResult {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Empirical steady-state variance of the deviation from consensus under
// unit white noise on every node.
MonteCarloResult coherence_monte_carlo(const Network& net, int trials,
                                       int horizon, std::uint64_t seed);

struct RebuildReport {
    bool modified_stable = false;
    double exact_hinf = 0.0;      // delta system, via sweep
    double exact_h2 = 0.0;        // squared H2 of the delta system
    double h2_tail = 0.0;
    double exact_coherence_delta = 0.0;  // Laplacian kind only
};

// Rebuild the modified network from scratch and recompute every metric by
// oracle paths only.
RebuildReport rebuild_and_measure(const Network& net, const EdgeMod& mod);

// Oracle-side coherence: truncated trace sum over the displacement
// dynamics, no spectral shortcuts.
TruncationResult coherence_truncated(const Network& net,
                                     const TruncationConfig& cfg = {});

}  // namespace netmod::oracle
