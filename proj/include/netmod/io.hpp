#pragma once

#include "netmod/network.hpp"

#include <iosfwd>
#include <string>

namespace netmod {

// JSON network format:
//   {"n": int, "kind": "direct"|"laplacian", "edges": [[i, j, w], ...],
//    "inputs": [...], "outputs": [...]}
// Edge entry (i, j, w) means edge i -> j with weight w (adjacency row j,
// column i); Laplacian kind lists each undirected edge once with i < j.
Network load_network_json(std::istream& in);
Network load_network_json_file(const std::string& path);
void save_network_json(const Network& net, std::ostream& out);
void save_network_json_file(const Network& net, const std::string& path);

// Headerless edge list ("i j w" per line) plus a sidecar JSON holding
// {"n":..., "kind":..., "inputs":..., "outputs":...}.
Network load_network_edgelist(const std::string& edge_path,
                              const std::string& sidecar_path);

}  // namespace netmod
