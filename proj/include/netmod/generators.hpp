#pragma once

#include "netmod/network.hpp"

#include <cstdint>

namespace netmod {

struct ErdosRenyiConfig {
    int n = 0;
    double p = 0.0;
    double target_rho = 0.9;
    std::uint64_t seed = 0;
    bool directed = true;  // independent ordered pairs by default
    int max_retries = 50;
    std::vector<int> inputs;   // defaults to all nodes when empty
    std::vector<int> outputs;  // defaults to all nodes when empty
};

// Directed ER graph with weights uniform on (0,1], rescaled so that
// rho(A) equals target_rho to within 1e-12 relative.
Network erdos_renyi(const ErdosRenyiConfig& cfg);

// Undirected path 0-1-...-(n-1), uniform weight w, Laplacian dynamics,
// inputs/outputs on every node.
Network path_graph(int n, double w);

// m x m grid, uniform weight w, Laplacian dynamics.
Network grid_graph(int m, double w);

// Complete graph on n nodes, uniform weight w, Laplacian dynamics.
Network complete_graph(int n, double w);

// Random seeded choice of k distinct nodes out of n (used for input /
// output set selection in generated networks).
std::vector<int> sample_nodes(int n, int k, std::uint64_t seed);

}  // namespace netmod
