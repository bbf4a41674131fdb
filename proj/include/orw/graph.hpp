#pragma once

// Symmetric weighted graphs and the regular families used throughout the
// library: r-nearest-neighbor cycles and their Cartesian products (tori).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "orw/errors.hpp"
#include "orw/format.hpp"

namespace orw {

using NodeId = std::size_t;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double weight = 1.0;
};

/// Undirected graph with nonnegative symmetric weights and no self-loops.
///
/// Storage is a compressed adjacency structure: for every node a sorted list
/// of neighbors and the matching edge weights. Each undirected edge appears in
/// both endpoint rows. Dense matrices are produced on demand. Instances are
/// immutable once built.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from undirected edges. An edge may be listed in both
    /// orientations provided the weights agree; zero-weight edges are dropped.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
        if (n == 0) {
            throw ParameterError("graph must have at least one node");
        }
        std::vector<std::vector<std::pair<NodeId, double>>> rows(n);
        for (const Edge& e : edges) {
            if (e.u >= n || e.v >= n) {
                throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      ") references a node outside [0," + std::to_string(n) + ")");
            }
            if (e.u == e.v) {
                throw ValidationError("self-loop at node " + std::to_string(e.u));
            }
            if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
                throw ValidationError("edge weights must be finite and nonnegative");
            }
            if (e.weight == 0.0) {
                continue;
            }
            rows[e.u].emplace_back(e.v, e.weight);
            rows[e.v].emplace_back(e.u, e.weight);
        }

        Graph g;
        g.offsets_.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& row = rows[i];
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::size_t kept = 0;
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (kept > 0 && row[kept - 1].first == row[k].first) {
                    if (row[kept - 1].second != row[k].second) {
                        throw ValidationError("conflicting weights for edge (" + std::to_string(i) +
                                              "," + std::to_string(row[k].first) + ")");
                    }
                    continue;
                }
                row[kept++] = row[k];
            }
            row.resize(kept);
            g.offsets_[i + 1] = g.offsets_[i] + kept;
        }
        g.neighbors_.reserve(g.offsets_[n]);
        g.weights_.reserve(g.offsets_[n]);
        for (const auto& row : rows) {
            for (const auto& [v, w] : row) {
                g.neighbors_.push_back(v);
                g.weights_.push_back(w);
            }
        }
        g.finalize();
        return g;
    }

    /// Builds a graph from a dense weight matrix, which must be square,
    /// exactly symmetric, nonnegative and zero on the diagonal.
    static Graph from_dense(const Eigen::MatrixXd& weights) {
        if (weights.rows() != weights.cols()) {
            throw ValidationError("weight matrix must be square");
        }
        const auto n = static_cast<std::size_t>(weights.rows());
        std::vector<Edge> edges;
        for (Eigen::Index i = 0; i < weights.rows(); ++i) {
            if (weights(i, i) != 0.0) {
                throw ValidationError("weight matrix diagonal must be zero");
            }
            for (Eigen::Index j = i + 1; j < weights.cols(); ++j) {
                if (weights(i, j) != weights(j, i)) {
                    throw ValidationError("weight matrix must be symmetric");
                }
                if (weights(i, j) != 0.0) {
                    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), weights(i, j)});
                }
            }
        }
        return from_edges(n, edges);
    }

    std::size_t node_count() const { return degrees_.size(); }

    /// Number of undirected edges.
    std::size_t edge_count() const { return neighbors_.size() / 2; }

    bool is_binary() const { return binary_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {neighbors_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    std::span<const double> weights(NodeId u) const {
        return {weights_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    /// Weighted degree: sum of incident edge weights.
    double degree(NodeId u) const { return degrees_[u]; }

    const std::vector<double>& degrees() const { return degrees_; }

    /// Sum of all degrees (twice the total edge weight).
    double volume() const { return volume_; }

    double min_degree() const {
        return degrees_.empty() ? 0.0 : *std::min_element(degrees_.begin(), degrees_.end());
    }

    double weight(NodeId u, NodeId v) const {
        auto nb = neighbors(u);
        auto it = std::lower_bound(nb.begin(), nb.end(), v);
        if (it == nb.end() || *it != v) {
            return 0.0;
        }
        return weights_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
    }

    /// Undirected edges with u < v, in row-major order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count());
        for (NodeId u = 0; u < node_count(); ++u) {
            auto nb = neighbors(u);
            auto w = weights(u);
            for (std::size_t k = 0; k < nb.size(); ++k) {
                if (u < nb[k]) {
                    out.push_back({u, nb[k], w[k]});
                }
            }
        }
        return out;
    }

    Eigen::MatrixXd adjacency_matrix() const {
        const auto n = static_cast<Eigen::Index>(node_count());
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (NodeId u = 0; u < node_count(); ++u) {
            auto nb = neighbors(u);
            auto w = weights(u);
            for (std::size_t k = 0; k < nb.size(); ++k) {
                a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(nb[k])) = w[k];
            }
        }
        return a;
    }

    /// Combinatorial Laplacian D - A.
    Eigen::MatrixXd laplacian_matrix() const {
        Eigen::MatrixXd l = -adjacency_matrix();
        for (NodeId u = 0; u < node_count(); ++u) {
            l(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(u)) = degrees_[u];
        }
        return l;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ && a.weights_ == b.weights_;
    }

private:
    friend Graph cartesian_product(const Graph& g1, const Graph& g2);

    void finalize() {
        const std::size_t n = offsets_.size() - 1;
        degrees_.assign(n, 0.0);
        binary_ = true;
        for (std::size_t u = 0; u < n; ++u) {
            double d = 0.0;
            for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
                d += weights_[k];
                binary_ = binary_ && weights_[k] == 1.0;
            }
            degrees_[u] = d;
        }
        volume_ = std::accumulate(degrees_.begin(), degrees_.end(), 0.0);
    }

    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> neighbors_;
    std::vector<double> weights_;
    std::vector<double> degrees_;
    double volume_ = 0.0;
    bool binary_ = true;
};

/// Regular network family: the Cartesian product of r-nearest-neighbor
/// cycles of lengths dims[0], ..., dims[m-1].
struct TorusSpec {
    std::vector<std::size_t> dims;
    std::size_t r = 1;

    std::size_t node_count() const {
        std::size_t n = 1;
        for (auto k : dims) {
            n *= k;
        }
        return n;
    }

    std::size_t dimension() const { return dims.size(); }

    void validate() const {
        if (dims.empty()) {
            throw ParameterError("torus needs at least one dimension (m >= 1)");
        }
        if (r < 1) {
            throw ParameterError("neighbor radius must satisfy r >= 1");
        }
        for (auto k : dims) {
            if (k < 3) {
                throw ParameterError("every torus side must satisfy k >= 3, got " + std::to_string(k));
            }
            if (2 * r + 1 > k) {
                throw ParameterError("neighbor radius must satisfy 2r+1 <= k (r=" + std::to_string(r) +
                                     ", k=" + std::to_string(k) + ")");
            }
        }
    }

    std::string label() const {
        std::string s = "dims=";
        for (std::size_t i = 0; i < dims.size(); ++i) {
            s += (i ? "x" : "") + std::to_string(dims[i]);
        }
        return s + ";r=" + std::to_string(r);
    }
};

inline void validate_cycle_parameters(std::size_t n, std::size_t r) {
    if (n < 3) {
        throw ParameterError("cycle needs n >= 3, got n=" + std::to_string(n));
    }
    if (r < 1) {
        throw ParameterError("neighbor radius must satisfy r >= 1");
    }
    if (2 * r + 1 > n) {
        throw ParameterError("neighbor radius must satisfy 2r+1 <= n (r=" + std::to_string(r) +
                             ", n=" + std::to_string(n) + ")");
    }
}

/// r-nearest-neighbor cycle C_n^r: i ~ j iff their circular distance is in [1, r].
inline Graph build_cycle(std::size_t n, std::size_t r) {
    validate_cycle_parameters(n, r);
    std::vector<Edge> edges;
    edges.reserve(n * r);
    for (NodeId i = 0; i < n; ++i) {
        for (std::size_t d = 1; d <= r; ++d) {
            edges.push_back({i, (i + d) % n, 1.0});
        }
    }
    return Graph::from_edges(n, edges);
}

/// Cartesian product g1 □ g2. Node (u1, u2) has index u1 * n2 + u2.
inline Graph cartesian_product(const Graph& g1, const Graph& g2) {
    const std::size_t n1 = g1.node_count();
    const std::size_t n2 = g2.node_count();
    Graph g;
    g.offsets_.assign(n1 * n2 + 1, 0);
    g.neighbors_.reserve(2 * (n1 * g2.edge_count() + n2 * g1.edge_count()));
    g.weights_.reserve(g.neighbors_.capacity());
    std::size_t row = 0;
    for (NodeId u1 = 0; u1 < n1; ++u1) {
        auto nb1 = g1.neighbors(u1);
        auto w1 = g1.weights(u1);
        const auto split = static_cast<std::size_t>(std::lower_bound(nb1.begin(), nb1.end(), u1) - nb1.begin());
        for (NodeId u2 = 0; u2 < n2; ++u2) {
            // Emitted in increasing index order: lower g1-neighbors, the g2 row, upper g1-neighbors.
            for (std::size_t k = 0; k < split; ++k) {
                g.neighbors_.push_back(nb1[k] * n2 + u2);
                g.weights_.push_back(w1[k]);
            }
            auto nb2 = g2.neighbors(u2);
            auto w2 = g2.weights(u2);
            for (std::size_t k = 0; k < nb2.size(); ++k) {
                g.neighbors_.push_back(u1 * n2 + nb2[k]);
                g.weights_.push_back(w2[k]);
            }
            for (std::size_t k = split; k < nb1.size(); ++k) {
                g.neighbors_.push_back(nb1[k] * n2 + u2);
                g.weights_.push_back(w1[k]);
            }
            g.offsets_[++row] = g.neighbors_.size();
        }
    }
    g.finalize();
    return g;
}

/// Fold of cartesian_product over build_cycle(k_i, r); node indexing is
/// row-major over the coordinate tuple (x_1, ..., x_m).
inline Graph build_torus(const TorusSpec& spec) {
    spec.validate();
    Graph g = build_cycle(spec.dims.front(), spec.r);
    for (std::size_t i = 1; i < spec.dims.size(); ++i) {
        g = cartesian_product(g, build_cycle(spec.dims[i], spec.r));
    }
    return g;
}

/// Complete graph K_n with unit weights.
inline Graph build_complete(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            edges.push_back({i, j, 1.0});
        }
    }
    return Graph::from_edges(n, edges);
}

inline bool is_connected(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) {
        return false;
    }
    std::vector<char> seen(n, 0);
    std::queue<NodeId> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        for (NodeId v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                frontier.push(v);
            }
        }
    }
    return reached == n;
}

// Edge-list text format:
//   n <count>
//   i j w        (one line per undirected edge, 0-based indices)

inline void write_edge_list(std::ostream& os, const Graph& g) {
    os << "n " << g.node_count() << '\n';
    for (const Edge& e : g.edges()) {
        os << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
    }
}

inline Graph read_edge_list(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) {
            tokens.push_back(tok);
        }
        if (tokens.empty() || tokens.front().starts_with('#')) {
            continue;
        }
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (!have_header) {
            if (tokens.size() != 2 || tokens[0] != "n" || !parse_integer(tokens[1], n)) {
                throw ValidationError(where + "expected header 'n <count>'");
            }
            have_header = true;
            continue;
        }
        Edge e;
        if (tokens.size() != 3 || !parse_integer(tokens[0], e.u) || !parse_integer(tokens[1], e.v) ||
            !parse_double(tokens[2], e.weight)) {
            throw ValidationError(where + "expected 'i j w'");
        }
        edges.push_back(e);
    }
    if (!have_header) {
        throw ValidationError("edge list is missing the 'n <count>' header");
    }
    return Graph::from_edges(n, edges);
}

inline Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open edge list '" + path + "'");
    }
    return read_edge_list(in);
}

}  // namespace orw
