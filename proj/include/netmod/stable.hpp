#pragma once

#include "netmod/network.hpp"

#include <limits>
#include <optional>

namespace netmod {

struct Gramian {
    Matrix W;
    double trace_value = 0.0;
};

// Precomputed resolvent, Gramian-based centralities and walk energies for
// a stable positive network. Built once, then every candidate edge
// modification is analyzed in O(1).
struct SteadyStateKernel {
    Matrix resolvent;             // R = (I - A)^{-1}
    Vector row_norm_o;            // sqrt(sum_{o in O} R(o,r)^2) per node r
    Vector col_norm_k;            // sqrt(sum_{k in K} R(r,k)^2) per node r
    Matrix walk_energy;           // E(s,t) = eps_{t->s} = sum_tau ((A^tau)_{st})^2
    Vector q;                     // input-to-node centralities
    Vector p;                     // node-to-output centralities
    double truncation_error = 0;  // certified tail bound of the walk-energy sum
    double rho = 0;               // rho(A)
    Matrix A;
    std::vector<int> inputs;
    std::vector<int> outputs;

    int n() const { return static_cast<int>(A.rows()); }
};

struct DeltaRealization {
    LinearSystem sys;  // 2n states; output = ybar - y
};

struct DeltaEntry {
    int s = 0;
    int t = 0;
    double margin = std::numeric_limits<double>::infinity();
    bool destabilizing = false;
    double hinf = 0.0;  // +inf when destabilizing
    double h2_lower_bound = 0.0;
};

enum class ScanSortKey { Margin, Hinf, H2Bound, Pair };

struct GreedyGramianResult {
    std::vector<EdgeMod> mods;
    double trace_before = 0.0;
    double trace_after = 0.0;
    std::vector<double> bounds;  // selected Eq-(15) bound at each step
};

SteadyStateKernel build_kernel(const Network& net, double tol = 1e-12);

// Controllability Gramian of (A, E_K).
Gramian controllability_gramian(const Network& net);
// Tr(C W C^T) for the network's output set.
double output_gramian_trace(const Network& net);

// Largest stable weight on edge (s,t): 1/R(s,t), +inf when no path t->s.
double stability_margin(const SteadyStateKernel& k, int s, int t);

// Exact Hinf norm of the delta system for a stable modification.
double delta_hinf(const SteadyStateKernel& k, const EdgeMod& mod);

// Lower bound on the squared H2 norm of the delta system.
double delta_h2_lower_bound(const SteadyStateKernel& k, const EdgeMod& mod);

// 2n-state realization of the delta system.
DeltaRealization delta_realization(const Network& net, const EdgeMod& mod);

// Per-edge margin / Hinf / H2-bound table for every ordered pair at probe
// weight w. Deterministic for any worker count.
std::vector<DeltaEntry> batch_scan(const SteadyStateKernel& k, double w,
                                   ScanSortKey sort = ScanSortKey::Pair,
                                   int top_k = 0, int jobs = 1);

GreedyGramianResult greedy_gramian_improve(const Network& net, int budget,
                                           double candidate_weight);

// Minimal finite stability margin over all ordered pairs, with arg-min.
std::pair<double, EdgeMod> fragility_radius(const SteadyStateKernel& k);

}  // namespace netmod
