// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include "netmod/generators.hpp"
#include "netmod/laplacian.hpp"
#include "netmod/linalg.hpp"
#include "netmod/oracle.hpp"
#include "netmod/stable.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace netmod;

namespace {

int failures = 0;

void criterion(int id, const char* desc, const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
        ok = body();
    } catch (const std::exception& e) {
        err = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    std::printf("[%s] %2d %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, desc,
                secs, err.empty() ? "" : " ", err.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

Network chain2() {
    return build_network(2, {{0, 1, 0.5}}, {0}, {1},
                         NetworkKind::DirectStable);
}

Network random_laplacian(int n, std::uint64_t seed, double extra_p = 0.15) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng() % static_cast<std::uint64_t>(v));
        edges.push_back({u, v, 0.0});
        used[u][v] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (used[i][j]) continue;
            if ((rng() % 1000) < static_cast<std::uint64_t>(extra_p * 1000))
                edges.push_back({i, j, 0.0});
        }
    std::vector<double> degree(n, 0.0);
    for (auto& e : edges) {
        e.weight = 0.1 + 0.9 * linalg::uniform01(rng);
        degree[e.from] += e.weight;
        degree[e.to] += e.weight;
    }
    double cap = 0.0;
    for (double d : degree) cap = std::max(cap, d);
    for (auto& e : edges) e.weight *= 0.45 / cap;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return build_network(n, edges, all, all, NetworkKind::Laplacian);
}

Network random_stable(int n, std::uint64_t seed, double rho,
                      std::vector<int> k, std::vector<int> o) {
    ErdosRenyiConfig cfg;
    cfg.n = n;
    cfg.p = 0.2;
    cfg.target_rho = rho;
    cfg.seed = seed;
    cfg.inputs = std::move(k);
    cfg.outputs = std::move(o);
    return erdos_renyi(cfg);
}

}  // namespace

int main() {
    criterion(1, "two-node closed forms at 1e-12", [] {
        Network net = chain2();
        SteadyStateKernel k = build_kernel(net);
        bool ok = true;
        ok = ok && std::abs(stability_margin(k, 1, 0) - 2.0) <= 1e-12;
        ok = ok && std::isinf(stability_margin(k, 0, 1));
        ok = ok && std::abs(delta_hinf(k, {1, 0, 1.0}) - 0.5) <= 1e-12;
        ok = ok &&
             std::abs(delta_h2_lower_bound(k, {1, 0, 1.0}) - 1.0 / 12.0) <=
                 1e-12;
        return ok;
    });

    criterion(2, "margin sharpness at 0.99x / 1.01x on 50 random nets", [] {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            Network net = random_stable(20, 100 + seed, 0.9, {0}, {19});
            SteadyStateKernel k = build_kernel(net);
            auto [margin, arg] = fragility_radius(k);
            if (!std::isfinite(margin)) return false;
            // probe the raw matrices: the 1.01x case is deliberately
            // outside what build_network accepts
            Matrix below = net.state_matrix();
            below(arg.t, arg.s) += 0.99 * margin;
            Matrix above = net.state_matrix();
            above(arg.t, arg.s) += 1.01 * margin;
            if (linalg::spectral_radius(below) >= 1.0) return false;
            if (linalg::spectral_radius(above) < 1.0) return false;
        }
        return true;
    });

    criterion(3, "exact delta Hinf matches the sweep oracle at 1e-6", [] {
        std::mt19937_64 rng(11);
        int checked = 0;
        while (checked < 40) {
            Network net = random_stable(12, 200 + (rng() % 20), 0.85, {0, 3},
                                        {5, 9, 11});
            SteadyStateKernel k = build_kernel(net);
            int s = static_cast<int>(rng() % 12);
            int t = static_cast<int>(rng() % 12);
            if (s == t) continue;
            double margin = stability_margin(k, s, t);
            double w = 0.5 * std::min(margin, 2.0) * linalg::uniform01(rng);
            if (w <= 0.0) continue;
            double exact = delta_hinf(k, {s, t, w});
            auto sweep = oracle::hinf_sweep(delta_realization(net, {s, t, w}).sys);
            if (std::abs(exact - sweep.value) >
                1e-6 * std::max(1.0, std::abs(exact)))
                return false;
            if (exact > 1e-12 &&
                std::abs(sweep.argmax_theta) > 2.0 * sweep.grid_spacing)
                return false;
            ++checked;
        }
        return true;
    });

    criterion(4, "H2 bound below the oracle on 500 triples, tight on chains", [] {
        std::mt19937_64 rng(17);
        int checked = 0;
        while (checked < 500) {
            Network net = random_stable(10, 300 + (rng() % 25), 0.8, {0, 1},
                                        {8, 9});
            SteadyStateKernel k = build_kernel(net);
            int s = static_cast<int>(rng() % 10);
            int t = static_cast<int>(rng() % 10);
            if (s == t) continue;
            double margin = stability_margin(k, s, t);
            double w = 0.6 * std::min(margin, 2.0) * linalg::uniform01(rng);
            if (w <= 0.0) continue;
            double bound = delta_h2_lower_bound(k, {s, t, w});
            auto h2 = oracle::h2_truncated(delta_realization(net, {s, t, w}).sys);
            if (bound > h2.value + h2.tail_bound + 1e-9) return false;
            ++checked;
        }
        Network c = chain2();
        SteadyStateKernel kc = build_kernel(c);
        for (double w : {0.1, 0.25, 0.4}) {
            double bound = delta_h2_lower_bound(kc, {0, 1, w});
            auto h2 = oracle::h2_truncated(delta_realization(c, {0, 1, w}).sys);
            if (std::abs(bound - h2.value) > 1e-10) return false;
        }
        return true;
    });

    criterion(5, "MIMO cascade energy 2, product of norms 4", [] {
        // two decoupled unit delays, in cascade with themselves
        LinearSystem d;
        d.A = Matrix::Zero(2, 2);
        d.B = Matrix::Identity(2, 2);
        d.C = Matrix::Identity(2, 2);
        LinearSystem cascade;
        cascade.A = Matrix::Zero(4, 4);
        cascade.A.bottomLeftCorner(2, 2) = d.B * d.C;
        cascade.B = Matrix::Zero(4, 2);
        cascade.B.topRows(2) = d.B;
        cascade.C = Matrix::Zero(2, 4);
        cascade.C.rightCols(2) = d.C;
        double single = oracle::h2_truncated(d).value;
        double both = oracle::h2_truncated(cascade).value;
        return std::abs(single - 2.0) <= 1e-12 &&
               std::abs(both - 2.0) <= 1e-12 && both < single * single;
    });

    criterion(6, "coherence routes agree at 1e-9 on 50 graphs", [] {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            Network net = random_laplacian(30, 500 + seed);
            LaplacianKernel k = build_laplacian_kernel(net);
            double spectral = coherence(k);
            DisplacementSystem d = displacement(net);
            double tr = pseudo_gramian(d).trace_value;
            if (std::abs(spectral - tr) > 1e-9 * std::max(1.0, spectral))
                return false;
            // the two displacement realizations share their impulse response
            Matrix A = net.state_matrix();
            Matrix M1 = Matrix::Identity(30, 30), M2 = M1;
            for (int t = 1; t <= 40; ++t) {
                if ((d.sys.C * (M1 - M2) * d.sys.B).norm() > 1e-10)
                    return false;
                M1 = d.sys.A * M1;
                M2 = A * M2;
            }
        }
        return true;
    });

    criterion(7, "coherence delta vs rebuild at 1e-9 on 500 additions", [] {
        std::mt19937_64 rng(23);
        int checked = 0;
        while (checked < 500) {
            std::uint64_t seed = 700 + (rng() % 10);
            Network net = random_laplacian(50, seed);
            LaplacianKernel k = build_laplacian_kernel(net);
            double base = coherence(k);
            int s = static_cast<int>(rng() % 50);
            int t = static_cast<int>(rng() % 50);
            if (s == t) continue;
            double w = 0.005 + 0.02 * linalg::uniform01(rng);
            double cdel;
            try {
                cdel = coherence_delta(k, s, t, w);
            } catch (const SpectralConditionViolated&) {
                continue;
            }
            double rebuilt =
                coherence(build_laplacian_kernel(apply_mod(net, {s, t, w}))) -
                base;
            if (std::abs(cdel - rebuilt) > 1e-9 * std::max(1.0, std::abs(rebuilt)))
                return false;
            if (cdel > 1e-10) return false;
            if (checked == 0) {
                CoherenceReport rep = batch_coherence_delta(k, w);
                if (!rep.admissible(t, s)) return false;
                if (std::abs(rep.q(t, s) - cdel) > 1e-10) return false;
            }
            ++checked;
        }
        return true;
    });

    criterion(8, "displacement Hinf bound dominates the sweep on 200 additions", [] {
        std::mt19937_64 rng(29);
        int checked = 0;
        while (checked < 200) {
            std::uint64_t seed = 900 + (rng() % 8);
            Network net = random_laplacian(15, seed);
            LaplacianKernel k = build_laplacian_kernel(net);
            DisplacementSystem d = displacement(net);
            int s = static_cast<int>(rng() % 15);
            int t = static_cast<int>(rng() % 15);
            if (s == t) continue;
            double w = 0.005 + 0.03 * linalg::uniform01(rng);
            double bound;
            try {
                bound = delta_hinf_upper_bound(k, s, t, w);
            } catch (const SpectralConditionViolated&) {
                continue;
            }
            DisplacementSystem dbar = displacement(apply_mod(net, {s, t, w}));
            LinearSystem delta;
            delta.A = Matrix::Zero(30, 30);
            delta.A.topLeftCorner(15, 15) = dbar.sys.A;
            delta.A.bottomRightCorner(15, 15) = d.sys.A;
            delta.B = Matrix::Zero(30, 15);
            delta.B.topRows(15) = dbar.sys.B;
            delta.B.bottomRows(15) = d.sys.B;
            delta.C = Matrix::Zero(15, 30);
            delta.C.leftCols(15) = d.sys.C;
            delta.C.rightCols(15) = -d.sys.C;
            // a coarser grid still lower-bounds the sup the bound must beat
            oracle::SweepConfig sc;
            sc.grid_points = 1024;
            auto sweep = oracle::hinf_sweep(delta, sc);
            if (bound < sweep.value - 1e-9) return false;
            ++checked;
        }
        return true;
    });

    criterion(9, "greedy growth on the 20-node path hits the target band", [] {
        Network net = path_graph(20, 0.2);
        auto res = greedy_grow(net, 0.2, 10);
        if (res.trajectory.size() != 11) return false;
        if (std::abs(res.trajectory.front() - 172.37) > 0.01) return false;
        double final_c = res.trajectory.back();
        if (final_c < 29.3 || final_c > 31.3) return false;
        return res.diameter_before == 19 && res.diameter_after <= 5;
    });

    criterion(10, "large-scale scan: destabilizing fraction and bound validity", [] {
        ErdosRenyiConfig cfg;
        cfg.n = 500;
        cfg.p = 0.02;
        cfg.target_rho = 0.9;
        cfg.seed = 1;
        cfg.inputs = sample_nodes(500, 50, 2);
        cfg.outputs = sample_nodes(500, 100, 3);
        Network net = erdos_renyi(cfg);
        SteadyStateKernel k = build_kernel(net);
        auto scan = batch_scan(k, 10.0, ScanSortKey::Pair, 0, 4);
        std::size_t destab = 0;
        std::vector<std::size_t> stable_idx;
        for (std::size_t i = 0; i < scan.size(); ++i) {
            if (scan[i].destabilizing)
                ++destab;
            else
                stable_idx.push_back(i);
        }
        double frac = static_cast<double>(destab) / scan.size();
        std::fprintf(stderr, "destabilizing fraction: %.4f\n", frac);
        if (frac < 0.003 || frac > 0.03) return false;

        std::mt19937_64 rng(31);
        oracle::TruncationConfig tc;
        tc.cross_check = false;
        for (int i = 0; i < 30; ++i) {
            const DeltaEntry& e =
                scan[stable_idx[rng() % stable_idx.size()]];
            auto h2 =
                oracle::h2_truncated(delta_realization(net, {e.s, e.t, 10.0}).sys,
                                     tc);
            double ratio = e.h2_lower_bound / std::max(h2.value, 1e-300);
            std::fprintf(stderr, "pair (%d,%d) bound/oracle = %.6f\n", e.s,
                         e.t, ratio);
            if (e.h2_lower_bound > h2.value + h2.tail_bound +
                                       1e-9 * std::max(1.0, h2.value))
                return false;
        }
        return true;
    });

    criterion(11, "monte carlo coherence within three standard errors", [] {
        for (int n : {2, 3, 10}) {
            Network net = path_graph(n, 0.2);
            double exact = coherence(build_laplacian_kernel(net));
            auto mc = oracle::coherence_monte_carlo(net, 10000, 600, 47);
            if (std::abs(mc.estimate - exact) > 3.0 * mc.standard_error)
                return false;
        }
        return true;
    });

    return failures == 0 ? 0 : 1;
}
