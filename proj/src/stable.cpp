#include "netmod/stable.hpp"

#include "netmod/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace netmod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Entries of R below this fraction of the max are treated as exact zeros
// (no path), so rounding noise cannot produce astronomically large margins.
constexpr double kZeroCut = 1e-14;

}  // namespace

SteadyStateKernel build_kernel(const Network& net, double tol) {
    if (net.kind() != NetworkKind::DirectStable)
        throw InvariantViolation("build_kernel requires DirectStable kind");
    const int n = net.n();
    const Matrix& A = net.adjacency();

    SteadyStateKernel k;
    k.A = A;
    k.inputs = net.inputs();
    k.outputs = net.outputs();
    k.rho = net.spectral_radius_bound();
    if (k.rho >= 1.0) throw SingularResolvent("rho(A) >= 1");

    Matrix ImA = Matrix::Identity(n, n) - A;
    k.resolvent = ImA.partialPivLu().solve(Matrix::Identity(n, n));

    k.row_norm_o = Vector::Zero(n);
    k.col_norm_k = Vector::Zero(n);
    for (int r = 0; r < n; ++r) {
        double so = 0.0, sk = 0.0;
        for (int o : net.outputs()) so += k.resolvent(o, r) * k.resolvent(o, r);
        for (int i : net.inputs()) sk += k.resolvent(r, i) * k.resolvent(r, i);
        k.row_norm_o(r) = std::sqrt(so);
        k.col_norm_k(r) = std::sqrt(sk);
    }

    // Walk energies by truncated accumulation of (A^tau o A^tau); the tail
    // is certified from the Frobenius decay.
    const double rho2 = k.rho * k.rho;
    Matrix P = Matrix::Identity(n, n);
    Matrix E = Matrix::Identity(n, n);  // tau = 0 term
    const int cap = 100000;
    bool converged = false;
    double tail = 0.0;
    for (int it = 0; it < cap; ++it) {
        P = (A * P).eval();
        double pf2 = P.squaredNorm();
        E += P.cwiseProduct(P);
        tail = pf2 * rho2 / std::max(1.0 - rho2, 1e-300);
        if (tail < tol * E.trace()) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw TruncationNotConverged(
            "walk-energy accumulation did not converge (rho too close to 1)");
    k.walk_energy = std::move(E);
    k.truncation_error = tail;

    // Centralities from Gramian diagonals, cross-checked against the
    // walk-energy sums.
    Matrix B = net.input_matrix();
    Matrix Wc = linalg::solve_lyapunov(A, B * B.transpose());
    Matrix Wo = linalg::solve_lyapunov(A.transpose(),
                                       net.output_matrix().transpose() *
                                           net.output_matrix());
    k.q = Wc.diagonal();
    k.p = Wo.diagonal();
    for (int i = 0; i < n; ++i) {
        double qs = 0.0, ps = 0.0;
        for (int j : net.inputs()) qs += k.walk_energy(i, j);
        for (int j : net.outputs()) ps += k.walk_energy(j, i);
        double tol_chk =
            1e-8 * std::max(1.0, std::max(k.q(i), k.p(i))) + 10 * tail;
        if (std::abs(qs - k.q(i)) > tol_chk || std::abs(ps - k.p(i)) > tol_chk)
            throw TruncationNotConverged(
                "centrality cross-check failed between Lyapunov and "
                "walk-energy paths");
    }
    return k;
}

Gramian controllability_gramian(const Network& net) {
    Matrix B = net.input_matrix();
    Gramian g;
    g.W = linalg::solve_lyapunov(net.state_matrix(), B * B.transpose());
    g.trace_value = g.W.trace();
    return g;
}

double output_gramian_trace(const Network& net) {
    Gramian g = controllability_gramian(net);
    double tr = 0.0;
    for (int o : net.outputs()) tr += g.W(o, o);
    return tr;
}

double stability_margin(const SteadyStateKernel& k, int s, int t) {
    if (s == t) throw InvariantViolation("stability_margin: s == t");
    double r = k.resolvent(s, t);
    if (r <= kZeroCut * k.resolvent.maxCoeff()) return kInf;
    return 1.0 / r;
}

namespace {

void check_mod_range(const SteadyStateKernel& k, const EdgeMod& mod,
                     double margin) {
    if (mod.w < -k.A(mod.t, mod.s) - 1e-15)
        throw WeightOutOfRange("w below -A[t][s]");
    if (mod.w >= margin)
        throw DestabilizingWeight("w >= stability margin");
}

}  // namespace

double delta_hinf(const SteadyStateKernel& k, const EdgeMod& mod) {
    double margin = stability_margin(k, mod.s, mod.t);
    check_mod_range(k, mod, margin);
    double denom = 1.0 - k.resolvent(mod.s, mod.t) * mod.w;
    return k.row_norm_o(mod.t) * std::abs(mod.w) * k.col_norm_k(mod.s) / denom;
}

double delta_h2_lower_bound(const SteadyStateKernel& k, const EdgeMod& mod) {
    double margin = stability_margin(k, mod.s, mod.t);
    check_mod_range(k, mod, margin);
    double eps = k.walk_energy(mod.s, mod.t);  // eps_{t->s}
    double denom = 1.0 - eps * mod.w * mod.w;
    return k.p(mod.t) * mod.w * mod.w * k.q(mod.s) / denom;
}

DeltaRealization delta_realization(const Network& net, const EdgeMod& mod) {
    const int n = net.n();
    Matrix A = net.state_matrix();
    Matrix Abar = A;
    Abar(mod.t, mod.s) += mod.w;
    Matrix B = net.input_matrix();
    Matrix C = net.output_matrix();

    // States [xbar - x; x]: the difference block is driven by the modified
    // entry acting on the original state.
    DeltaRealization d;
    d.sys.A = Matrix::Zero(2 * n, 2 * n);
    d.sys.A.topLeftCorner(n, n) = Abar;
    d.sys.A.topRightCorner(n, n) = Matrix::Zero(n, n);
    d.sys.A(mod.t, n + mod.s) = mod.w;
    d.sys.A.bottomRightCorner(n, n) = A;
    d.sys.B = Matrix::Zero(2 * n, B.cols());
    d.sys.B.bottomRows(n) = B;
    d.sys.C = Matrix::Zero(C.rows(), 2 * n);
    d.sys.C.leftCols(n) = C;
    return d;
}

std::vector<DeltaEntry> batch_scan(const SteadyStateKernel& k, double w,
                                   ScanSortKey sort, int top_k, int jobs) {
    const int n = k.n();
    std::vector<DeltaEntry> entries(static_cast<size_t>(n) * (n - 1));

    auto worker = [&](int s_begin, int s_end) {
        for (int s = s_begin; s < s_end; ++s) {
            size_t base = static_cast<size_t>(s) * (n - 1);
            int slot = 0;
            for (int t = 0; t < n; ++t) {
                if (t == s) continue;
                DeltaEntry& e = entries[base + slot++];
                e.s = s;
                e.t = t;
                e.margin = stability_margin(k, s, t);
                e.destabilizing = w >= e.margin;
                if (e.destabilizing) {
                    e.hinf = kInf;
                    e.h2_lower_bound = kInf;
                } else {
                    double denom = 1.0 - k.resolvent(s, t) * w;
                    e.hinf =
                        k.row_norm_o(t) * w * k.col_norm_k(s) / denom;
                    double eps = k.walk_energy(s, t);
                    e.h2_lower_bound =
                        k.p(t) * w * w * k.q(s) / (1.0 - eps * w * w);
                }
            }
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || n < 4 * jobs) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        int chunk = (n + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            int lo = j * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    auto pair_less = [](const DeltaEntry& a, const DeltaEntry& b) {
        return std::tie(a.s, a.t) < std::tie(b.s, b.t);
    };
    switch (sort) {
        case ScanSortKey::Pair:
            break;  // already in lexicographic order
        case ScanSortKey::Margin:
            std::stable_sort(entries.begin(), entries.end(),
                             [&](const DeltaEntry& a, const DeltaEntry& b) {
                                 if (a.margin != b.margin)
                                     return a.margin < b.margin;
                                 return pair_less(a, b);
                             });
            break;
        case ScanSortKey::Hinf:
            std::stable_sort(entries.begin(), entries.end(),
                             [&](const DeltaEntry& a, const DeltaEntry& b) {
                                 if (a.hinf != b.hinf) return a.hinf < b.hinf;
                                 return pair_less(a, b);
                             });
            break;
        case ScanSortKey::H2Bound:
            std::stable_sort(entries.begin(), entries.end(),
                             [&](const DeltaEntry& a, const DeltaEntry& b) {
                                 if (a.h2_lower_bound != b.h2_lower_bound)
                                     return a.h2_lower_bound < b.h2_lower_bound;
                                 return pair_less(a, b);
                             });
            break;
    }
    if (top_k > 0 && top_k < static_cast<int>(entries.size()))
        entries.resize(top_k);
    return entries;
}

GreedyGramianResult greedy_gramian_improve(const Network& net, int budget,
                                           double candidate_weight) {
    if (candidate_weight <= 0.0)
        throw WeightOutOfRange("candidate weight must be > 0");
    GreedyGramianResult res;
    res.trace_before = output_gramian_trace(net);
    Network cur = net;
    for (int step = 0; step < budget; ++step) {
        SteadyStateKernel k = build_kernel(cur);
        const int n = k.n();
        double best = 0.0;
        EdgeMod best_mod{-1, -1, candidate_weight};
        for (int s = 0; s < n; ++s) {
            for (int t = 0; t < n; ++t) {
                if (s == t) continue;
                double margin = stability_margin(k, s, t);
                // keep a safety gap to the stability boundary
                if (candidate_weight > 0.95 * margin) continue;
                EdgeMod m{s, t, candidate_weight};
                double bound = delta_h2_lower_bound(k, m);
                if (bound > best) {
                    best = bound;
                    best_mod = m;
                }
            }
        }
        if (best_mod.s < 0 || best <= 0.0)
            throw NoAdmissibleEdge("greedy_gramian_improve: no candidate");
        cur = apply_mod(cur, best_mod);
        res.mods.push_back(best_mod);
        res.bounds.push_back(best);
    }
    res.trace_after = output_gramian_trace(cur);
    return res;
}

std::pair<double, EdgeMod> fragility_radius(const SteadyStateKernel& k) {
    double best = kInf;
    EdgeMod arg{0, 1, 0.0};
    const int n = k.n();
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            double m = stability_margin(k, s, t);
            if (m < best) {
                best = m;
                arg = {s, t, m};
            }
        }
    return {best, arg};
}

}  // namespace netmod
