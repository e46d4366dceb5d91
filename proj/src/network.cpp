#include "netmod/network.hpp"

#include "netmod/linalg.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace netmod {

void LinearSystem::check_dims() const {
    if (A.rows() != A.cols() || B.rows() != A.rows() || C.cols() != A.cols())
        throw DimensionMismatch("LinearSystem: inconsistent dimensions");
}

namespace {

void check_node_set(const std::vector<int>& nodes, int n, const char* name) {
    if (nodes.empty())
        throw InvariantViolation(std::string(name) + " set must be nonempty");
    std::set<int> seen;
    for (int v : nodes) {
        if (v < 0 || v >= n)
            throw InvariantViolation(std::string(name) + " node out of range");
        if (!seen.insert(v).second)
            throw InvariantViolation(std::string(name) + " set has duplicates");
    }
}

}  // namespace

Network::Network(int n, Matrix adjacency, std::vector<int> inputs,
                 std::vector<int> outputs, NetworkKind kind)
    : n_(n),
      adj_(std::move(adjacency)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      kind_(kind),
      rho_(0.0) {
    validate();
}

void Network::validate() {
    if (n_ <= 0 || adj_.rows() != n_ || adj_.cols() != n_)
        throw InvariantViolation("adjacency dimension mismatch");
    check_node_set(inputs_, n_, "input");
    check_node_set(outputs_, n_, "output");
    if ((adj_.array() < 0.0).any())
        throw NonPositiveWeight("negative adjacency entry");

    if (kind_ == NetworkKind::DirectStable) {
        rho_ = linalg::spectral_radius(adj_);
        if (rho_ >= 1.0)
            throw UnstableNetwork("spectral radius >= 1");
    } else {
        if (adj_.diagonal().cwiseAbs().maxCoeff() != 0.0)
            throw InvariantViolation("Laplacian kind requires zero diagonal");
        if (!adj_.isApprox(adj_.transpose(), 1e-14))
            throw InvariantViolation("Laplacian kind requires symmetry");
        if (!linalg::connected_undirected(adj_))
            throw Disconnected("underlying graph is not connected");
        rho_ = linalg::sym_eig_max(laplacian());
        if (rho_ >= 1.0)
            throw SpectralConditionViolated("rho(L) >= 1");
    }
}

Matrix Network::state_matrix() const {
    if (kind_ == NetworkKind::DirectStable) return adj_;
    return Matrix::Identity(n_, n_) - laplacian();
}

Matrix Network::laplacian() const {
    if (kind_ != NetworkKind::Laplacian)
        throw InvariantViolation("laplacian() requires Laplacian kind");
    Matrix l = -adj_;
    l.diagonal() = adj_.rowwise().sum();
    return l;
}

Matrix Network::input_matrix() const {
    Matrix b = Matrix::Zero(n_, static_cast<int>(inputs_.size()));
    for (int c = 0; c < static_cast<int>(inputs_.size()); ++c)
        b(inputs_[c], c) = 1.0;
    return b;
}

Matrix Network::output_matrix() const {
    Matrix c = Matrix::Zero(static_cast<int>(outputs_.size()), n_);
    for (int r = 0; r < static_cast<int>(outputs_.size()); ++r)
        c(r, outputs_[r]) = 1.0;
    return c;
}

std::vector<Edge> Network::edges() const {
    std::vector<Edge> out;
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) {
            if (adj_(j, i) == 0.0) continue;
            if (kind_ == NetworkKind::Laplacian && i >= j) continue;
            // adjacency row j, column i holds edge i -> j
            out.push_back({i, j, adj_(j, i)});
        }
    }
    return out;
}

bool Network::has_edge(int i, int j) const { return adj_(j, i) != 0.0; }

bool Network::all_node_io() const {
    return static_cast<int>(inputs_.size()) == n_ &&
           static_cast<int>(outputs_.size()) == n_;
}

int Network::diameter() const {
    int diam = 0;
    for (int src = 0; src < n_; ++src) {
        std::vector<int> dist(n_, -1);
        std::queue<int> q;
        q.push(src);
        dist[src] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n_; ++v) {
                bool adj = kind_ == NetworkKind::Laplacian
                               ? (adj_(u, v) != 0.0)
                               : (adj_(v, u) != 0.0);  // follow edge u -> v
                if (adj && dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    q.push(v);
                }
            }
        }
        for (int v = 0; v < n_; ++v)
            if (dist[v] > diam) diam = dist[v];
    }
    return diam;
}

Network build_network(int n, const std::vector<Edge>& edge_list,
                      std::vector<int> inputs, std::vector<int> outputs,
                      NetworkKind kind) {
    Matrix adj = Matrix::Zero(n, n);
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edge_list) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw ParseError("edge endpoint out of range");
        if (e.weight <= 0.0)
            throw NonPositiveWeight("edge weight must be > 0");
        if (kind == NetworkKind::Laplacian) {
            if (e.from == e.to)
                throw InvariantViolation("self-loop in Laplacian network");
            auto key = std::minmax(e.from, e.to);
            if (!seen.insert({key.first, key.second}).second)
                throw DuplicateEdge("undirected edge listed twice");
            adj(e.to, e.from) = e.weight;
            adj(e.from, e.to) = e.weight;
        } else {
            if (!seen.insert({e.from, e.to}).second)
                throw DuplicateEdge("directed edge listed twice");
            adj(e.to, e.from) = e.weight;
        }
    }
    return Network(n, std::move(adj), std::move(inputs), std::move(outputs),
                   kind);
}

Network apply_mod(const Network& net, const EdgeMod& mod) {
    const int n = net.n();
    if (mod.s == mod.t || mod.s < 0 || mod.s >= n || mod.t < 0 || mod.t >= n)
        throw InvariantViolation("EdgeMod endpoints invalid");
    Matrix adj = net.adjacency();
    if (net.kind() == NetworkKind::DirectStable) {
        double next = adj(mod.t, mod.s) + mod.w;
        if (next < 0.0) {
            // removal rounds an exact cancellation to zero
            if (next > -1e-15 * std::max(1.0, std::abs(mod.w)))
                next = 0.0;
            else
                throw NegativeResultingWeight("resulting weight < 0");
        }
        adj(mod.t, mod.s) = next;
        return Network(n, std::move(adj), net.inputs(), net.outputs(),
                       net.kind());
    }
    if (mod.w <= 0.0)
        throw WeightOutOfRange("Laplacian modification must add weight");
    adj(mod.t, mod.s) += mod.w;
    adj(mod.s, mod.t) += mod.w;
    return Network(n, std::move(adj), net.inputs(), net.outputs(), net.kind());
}

}  // namespace netmod
