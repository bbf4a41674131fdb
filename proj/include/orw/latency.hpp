#pragma once

// Mean latency T = 2/(n-1) * Tr(L^+), its spectral bounds, per-pair hitting
// times of the simple random walk, and the expected packet delay.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orw/errors.hpp"
#include "orw/graph.hpp"
#include "orw/spectral.hpp"

namespace orw {

struct LatencyBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Expected hops h(s, t) for a walk started at s to first reach t; h(s, s) = 0.
struct HittingMatrix {
    Eigen::MatrixXd h;

    std::size_t size() const { return static_cast<std::size_t>(h.rows()); }
    double operator()(NodeId s, NodeId t) const {
        return h(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
    }
};

namespace detail {

inline void require_connected(const Graph& g, const char* what) {
    if (g.node_count() < 2) {
        throw ParameterError(std::string(what) + " needs at least two nodes");
    }
    if (!is_connected(g)) {
        throw DisconnectedGraphError(std::string(what) + " is undefined on a disconnected graph");
    }
}

}  // namespace detail

inline double mean_latency_from_trace(std::size_t n, double pinv_trace_value) {
    return 2.0 / static_cast<double>(n - 1) * pinv_trace_value;
}

/// T from the numeric Laplacian spectrum of an arbitrary connected graph.
inline double mean_latency_spectral(const Graph& g) {
    detail::require_connected(g, "mean latency");
    return mean_latency_from_trace(g.node_count(), pinv_trace(laplacian_spectrum(g)));
}

/// T for C_n^r from the closed-form eigenvalues.
inline double mean_latency_cycle(std::size_t n, std::size_t r) {
    return mean_latency_from_trace(n, pinv_trace(cycle_laplacian_eigenvalues(n, r)));
}

/// T for an r-nearest-neighbor torus, n = prod k_i. Every index tuple other
/// than the all-zero one contributes a nonzero eigenvalue.
inline double mean_latency_torus(const TorusSpec& spec) {
    return mean_latency_from_trace(spec.node_count(), pinv_trace(torus_laplacian_eigenvalues(spec)));
}

/// 2/((n-1) lambda_1) <= T <= 2/lambda_1 with lambda_1 the algebraic connectivity.
inline LatencyBounds latency_bounds_from_connectivity(std::size_t n, double lambda1) {
    return {2.0 / (static_cast<double>(n - 1) * lambda1), 2.0 / lambda1};
}

inline LatencyBounds latency_bounds(const Graph& g) {
    detail::require_connected(g, "latency bounds");
    return latency_bounds_from_connectivity(g.node_count(), algebraic_connectivity(laplacian_spectrum(g)));
}

/// Closed-form cycle bounds written with the j = 1 sine expression:
///   2 sin(pi/n) / ((n-1)((2r+1) sin(pi/n) - sin((2r+1) pi/n)))  and the same without (n-1).
inline LatencyBounds latency_bounds_cycle(std::size_t n, std::size_t r) {
    validate_cycle_parameters(n, r);
    const double s1 = std::sin(std::numbers::pi / static_cast<double>(n));
    const double sr = std::sin(static_cast<double>(2 * r + 1) * std::numbers::pi / static_cast<double>(n));
    const double denom = static_cast<double>(2 * r + 1) * s1 - sr;
    return {2.0 * s1 / (static_cast<double>(n - 1) * denom), 2.0 * s1 / denom};
}

/// Torus bounds. The smallest nonzero eigenvalue sits at j = 1 on the longest
/// axis, so that axis supplies lambda_1; n is the full node count.
inline LatencyBounds latency_bounds_torus(const TorusSpec& spec) {
    spec.validate();
    const std::size_t k = *std::max_element(spec.dims.begin(), spec.dims.end());
    const double lambda1 = cycle_laplacian_eigenvalue(k, spec.r, 1);
    return latency_bounds_from_connectivity(spec.node_count(), lambda1);
}

/// All-pairs hitting times from the normalized-Laplacian eigenpairs
/// (lambda_k, v_k):
///   H(s,t) = vol * sum_{k: lambda_k > 0} (1/lambda_k) (v_kt^2/d_t - v_ks v_kt / sqrt(d_s d_t)),
/// evaluated as vol * (G_tt - G_st) with G = D^{-1/2} V' Lambda'^{-1} V'^T D^{-1/2}.
inline HittingMatrix hitting_times(const Graph& g) {
    detail::require_connected(g, "hitting time");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const Spectrum spec = symmetric_eigendecomposition(normalized_laplacian(g), true);
    const double tol = zero_tolerance(spec.values);
    if (count_zero_eigenvalues(spec.values) != 1) {
        throw DisconnectedGraphError("normalized Laplacian has a repeated zero eigenvalue");
    }
    const Eigen::MatrixXd& v = *spec.vectors;
    Eigen::VectorXd inv_sqrt_deg(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        inv_sqrt_deg(i) = 1.0 / std::sqrt(g.degree(static_cast<NodeId>(i)));
    }

    Eigen::MatrixXd scaled(n, n - 1);
    Eigen::VectorXd inv_lambda(n - 1);
    Eigen::Index col = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(spec.values[static_cast<std::size_t>(k)]) <= tol) {
            continue;
        }
        scaled.col(col) = inv_sqrt_deg.cwiseProduct(v.col(k));
        inv_lambda(col) = 1.0 / spec.values[static_cast<std::size_t>(k)];
        ++col;
    }
    const Eigen::MatrixXd green = scaled * inv_lambda.asDiagonal() * scaled.transpose();

    HittingMatrix out{Eigen::MatrixXd(n, n)};
    const double vol = g.volume();
    for (Eigen::Index t = 0; t < n; ++t) {
        for (Eigen::Index s = 0; s < n; ++s) {
            out.h(s, t) = s == t ? 0.0 : vol * (green(t, t) - green(s, t));
        }
    }
    return out;
}

/// All-pairs hitting times by first-step analysis: for each target t solve
/// h(s) = 1 + sum_u P(s,u) h(u) over s != t with h(t) = 0, P = D^{-1} A.
/// O(n^4); kept as an independent check on hitting_times.
inline HittingMatrix hitting_times_first_step(const Graph& g) {
    detail::require_connected(g, "hitting time");
    const std::size_t n = g.node_count();
    const auto m = static_cast<Eigen::Index>(n - 1);
    HittingMatrix out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
    auto reduced = [](NodeId u, NodeId t) { return static_cast<Eigen::Index>(u < t ? u : u - 1); };
    for (NodeId t = 0; t < n; ++t) {
        Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m, m);
        for (NodeId s = 0; s < n; ++s) {
            if (s == t) {
                continue;
            }
            auto nb = g.neighbors(s);
            auto w = g.weights(s);
            for (std::size_t k = 0; k < nb.size(); ++k) {
                if (nb[k] != t) {
                    system(reduced(s, t), reduced(nb[k], t)) -= w[k] / g.degree(s);
                }
            }
        }
        const Eigen::VectorXd h = system.partialPivLu().solve(Eigen::VectorXd::Ones(m));
        for (NodeId s = 0; s < n; ++s) {
            if (s != t) {
                out.h(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = h(reduced(s, t));
            }
        }
    }
    return out;
}

/// Mean of h(i, j) over ordered pairs i != j.
inline double expected_packet_delay(const HittingMatrix& hm) {
    const std::size_t n = hm.size();
    if (n < 2) {
        throw ParameterError("expected packet delay needs at least two nodes");
    }
    detail::CompensatedSum sum;
    for (Eigen::Index t = 0; t < hm.h.cols(); ++t) {
        for (Eigen::Index s = 0; s < hm.h.rows(); ++s) {
            if (s != t) {
                sum.add(hm.h(s, t));
            }
        }
    }
    return sum.value() / static_cast<double>(n * (n - 1));
}

inline double expected_packet_delay(const Graph& g) { return expected_packet_delay(hitting_times(g)); }

}  // namespace orw
