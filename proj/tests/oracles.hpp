#pragma once

// Test-only reference computations. Each one takes a route independent of
// the library code it is compared against.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "orw/graph.hpp"

namespace orw::oracle {

/// Tr(L^+) from an explicitly assembled Moore-Penrose pseudoinverse
/// (complete orthogonal decomposition, no eigensolver involved).
inline double dense_pinv_trace(const Eigen::MatrixXd& laplacian) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(laplacian);
    cod.setThreshold(1e-10);
    return cod.pseudoInverse().trace();
}

inline double dense_mean_latency(const Graph& g) {
    return 2.0 / static_cast<double>(g.node_count() - 1) * dense_pinv_trace(g.laplacian_matrix());
}

/// Full circulant matrix whose row i is the first row rotated right by i.
inline Eigen::MatrixXd circulant_matrix(const std::vector<double>& first_row) {
    const auto n = static_cast<Eigen::Index>(first_row.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = first_row[static_cast<std::size_t>((j - i + n) % n)];
        }
    }
    return m;
}

/// Undirected edge count straight from the dense adjacency matrix.
inline std::size_t count_edges_dense(const Graph& g) {
    const Eigen::MatrixXd a = g.adjacency_matrix();
    std::size_t edges = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
            edges += a(i, j) != 0.0 ? 1 : 0;
        }
    }
    return edges;
}

/// Connected graph: random spanning tree plus extra random edges.
/// Weights are 1 when `binary`, otherwise uniform in [0.5, 3].
inline Graph random_connected_graph(std::size_t n, double extra_edge_prob, bool binary, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.5, 3.0);
    std::vector<Edge> edges;
    std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
    auto add = [&](std::size_t u, std::size_t v) {
        if (u == v || present[u][v]) {
            return;
        }
        present[u][v] = present[v][u] = 1;
        edges.push_back({u, v, binary ? 1.0 : weight(rng)});
    };
    for (std::size_t v = 1; v < n; ++v) {
        add(v, std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (unit(rng) < extra_edge_prob) {
                add(u, v);
            }
        }
    }
    return Graph::from_edges(n, edges);
}

/// Arbitrary (possibly disconnected) random graph.
inline Graph random_graph(std::size_t n, double edge_prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (unit(rng) < edge_prob) {
                edges.push_back({u, v, 1.0});
            }
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace orw::oracle
