#pragma once

#include "netmod/network.hpp"

// Shared fixtures for the unit suites.
namespace fixtures {

// Two-node chain 0 -> 1 with weight 0.5, K = {0}, O = {1}.
inline netmod::Network chain2() {
    return netmod::build_network(2, {{0, 1, 0.5}}, {0}, {1},
                                 netmod::NetworkKind::DirectStable);
}

// Zero adjacency on n nodes.
inline netmod::Network zero_net(int n, std::vector<int> k, std::vector<int> o) {
    return netmod::Network(n, netmod::Matrix::Zero(n, n), std::move(k),
                           std::move(o), netmod::NetworkKind::DirectStable);
}

}  // namespace fixtures
