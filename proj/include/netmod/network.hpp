#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace netmod {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Error hierarchy. Every domain failure maps to one of these so that the
// CLI can translate them into stable exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveWeight : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct UnstableNetwork : Error { using Error::Error; };
struct SpectralConditionViolated : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct NegativeResultingWeight : Error { using Error::Error; };
struct SingularResolvent : Error { using Error::Error; };
struct TruncationNotConverged : Error { using Error::Error; };
struct WeightOutOfRange : Error { using Error::Error; };
struct DestabilizingWeight : Error { using Error::Error; };
struct NoAdmissibleEdge : Error { using Error::Error; };
struct LyapunovNotConverged : Error { using Error::Error; };
struct AllNodeInputRequired : Error { using Error::Error; };
struct DegenerateAlpha : Error { using Error::Error; };
struct UnstableSystem : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct HorizonTooShort : Error { using Error::Error; };
struct ZeroSpectralRadius : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };

enum class NetworkKind { DirectStable, Laplacian };

struct Edge {
    int from = 0;
    int to = 0;
    double weight = 0.0;
};

// A candidate single-edge modification {(s,t), w}: the modified adjacency
// entry is row t, column s.
struct EdgeMod {
    int s = 0;
    int t = 0;
    double w = 0.0;
};

// State-space triple (A, B, C) with direct feedthrough zero.
struct LinearSystem {
    Matrix A;
    Matrix B;
    Matrix C;

    int states() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(B.cols()); }
    int outputs() const { return static_cast<int>(C.rows()); }

    void check_dims() const;
};

// Weighted network with input/output node sets. For DirectStable kind the
// state update matrix is the adjacency itself; for Laplacian kind it is
// A = I - L with L the graph Laplacian. Immutable after construction.
class Network {
public:
    Network(int n, Matrix adjacency, std::vector<int> inputs,
            std::vector<int> outputs, NetworkKind kind);

    int n() const { return n_; }
    NetworkKind kind() const { return kind_; }
    const Matrix& adjacency() const { return adj_; }
    const std::vector<int>& inputs() const { return inputs_; }
    const std::vector<int>& outputs() const { return outputs_; }

    // State update matrix of the dynamics (adjacency for DirectStable,
    // I - L for Laplacian).
    Matrix state_matrix() const;
    // Graph Laplacian (Laplacian kind only).
    Matrix laplacian() const;

    Matrix input_matrix() const;   // E_K, n x |K|
    Matrix output_matrix() const;  // E_O^T, |O| x n

    // List of present edges (i -> j, weight). Laplacian kind lists each
    // undirected edge once with i < j.
    std::vector<Edge> edges() const;

    bool has_edge(int i, int j) const;
    double spectral_radius_bound() const { return rho_; }

    bool all_node_io() const;

    // Shortest-path diameter of the underlying (undirected for Laplacian)
    // unweighted graph.
    int diameter() const;

private:
    int n_;
    Matrix adj_;
    std::vector<int> inputs_;
    std::vector<int> outputs_;
    NetworkKind kind_;
    double rho_;  // rho(adjacency) for DirectStable, rho(L) for Laplacian

    void validate();
};

Network build_network(int n, const std::vector<Edge>& edge_list,
                      std::vector<int> inputs, std::vector<int> outputs,
                      NetworkKind kind);

// Apply a single-edge modification. DirectStable: Abar = A + e_t w e_s^T.
// Laplacian: Lbar = L + w e_st e_st^T (undirected edge addition, w > 0).
Network apply_mod(const Network& net, const EdgeMod& mod);

}  // namespace netmod
