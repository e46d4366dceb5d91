#include "netmod/generators.hpp"

#include "netmod/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace netmod {

namespace {

std::vector<int> all_nodes(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

Network erdos_renyi(const ErdosRenyiConfig& cfg) {
    if (cfg.n < 2 || cfg.p <= 0.0 || cfg.p >= 1.0)
        throw InvariantViolation("erdos_renyi: need n >= 2, 0 < p < 1");
    if (cfg.target_rho <= 0.0 || cfg.target_rho >= 1.0)
        throw InvariantViolation("erdos_renyi: target_rho must be in (0,1)");

    std::mt19937_64 rng(cfg.seed);
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        Matrix adj = Matrix::Zero(cfg.n, cfg.n);
        if (cfg.directed) {
            for (int i = 0; i < cfg.n; ++i)
                for (int j = 0; j < cfg.n; ++j) {
                    if (i == j) continue;
                    double coin = linalg::uniform01(rng);
                    double wgt = linalg::uniform01(rng);
                    if (coin <= cfg.p) adj(j, i) = wgt;  // edge i -> j
                }
        } else {
            for (int i = 0; i < cfg.n; ++i)
                for (int j = i + 1; j < cfg.n; ++j) {
                    double coin = linalg::uniform01(rng);
                    double wgt = linalg::uniform01(rng);
                    if (coin <= cfg.p) {
                        adj(j, i) = wgt;
                        adj(i, j) = wgt;
                    }
                }
        }
        double rho = linalg::spectral_radius(adj);
        if (rho <= 0.0) continue;
        // Polish the rescale until the radius sits on the target.
        for (int pass = 0; pass < 6; ++pass) {
            adj *= cfg.target_rho / rho;
            rho = linalg::spectral_radius(adj);
            if (std::abs(rho - cfg.target_rho) <= 1e-13 * cfg.target_rho)
                break;
        }
        auto in = cfg.inputs.empty() ? all_nodes(cfg.n) : cfg.inputs;
        auto out = cfg.outputs.empty() ? all_nodes(cfg.n) : cfg.outputs;
        return Network(cfg.n, std::move(adj), std::move(in), std::move(out),
                       NetworkKind::DirectStable);
    }
    throw ZeroSpectralRadius("erdos_renyi: all retries drew rho(A) = 0");
}

Network path_graph(int n, double w) {
    if (n < 2 || w <= 0.0)
        throw InvariantViolation("path_graph: need n >= 2, w > 0");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
    return build_network(n, edges, all_nodes(n), all_nodes(n),
                         NetworkKind::Laplacian);
}

Network grid_graph(int m, double w) {
    if (m < 2 || w <= 0.0)
        throw InvariantViolation("grid_graph: need m >= 2, w > 0");
    int n = m * m;
    std::vector<Edge> edges;
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            int u = r * m + c;
            if (c + 1 < m) edges.push_back({u, u + 1, w});
            if (r + 1 < m) edges.push_back({u, u + m, w});
        }
    return build_network(n, edges, all_nodes(n), all_nodes(n),
                         NetworkKind::Laplacian);
}

Network complete_graph(int n, double w) {
    if (n < 2 || w <= 0.0)
        throw InvariantViolation("complete_graph: need n >= 2, w > 0");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
    return build_network(n, edges, all_nodes(n), all_nodes(n),
                         NetworkKind::Laplacian);
}

std::vector<int> sample_nodes(int n, int k, std::uint64_t seed) {
    if (k < 1 || k > n) throw InvariantViolation("sample_nodes: bad k");
    std::vector<int> pool = all_nodes(n);
    std::mt19937_64 rng(seed);
    // Fisher-Yates prefix, hand-rolled index draw for cross-platform
    // determinism.
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace netmod
