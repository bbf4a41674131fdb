#pragma once

// Laplacian spectra: closed forms for r-nearest-neighbor cycles and tori,
// a numeric symmetric eigensolver for arbitrary graphs, and the
// pseudoinverse trace built from either.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orw/errors.hpp"
#include "orw/graph.hpp"

namespace orw {

enum class SpectrumSource { ClosedForm, Numeric };

/// Real eigenvalues in ascending order, optionally with the matching
/// orthonormal eigenvectors stored as columns.
struct Spectrum {
    std::vector<double> values;
    std::optional<Eigen::MatrixXd> vectors;
    SpectrumSource source = SpectrumSource::Numeric;

    std::size_t size() const { return values.size(); }
};

namespace detail {

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

// sin(pi * num / den) with the argument reduced modulo 2*pi in integer arithmetic.
inline double sin_pi_ratio(std::size_t num, std::size_t den) {
    const std::size_t reduced = num % (2 * den);
    return std::sin(std::numbers::pi * static_cast<double>(reduced) / static_cast<double>(den));
}

inline double cos_two_pi_ratio(std::size_t num, std::size_t den) {
    const std::size_t reduced = num % den;
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(reduced) / static_cast<double>(den));
}

}  // namespace detail

/// Eigenvalues of the circulant matrix with the given first row:
/// lambda_j = sum_k a_k * omega^(j*k), omega = exp(2*pi*i/n), j = 0..n-1.
inline std::vector<std::complex<double>> circulant_eigenvalues(std::span<const double> first_row) {
    const std::size_t n = first_row.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            acc += first_row[k] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[j] = acc;
    }
    return out;
}

/// 1 + 2 * sum_{j=1..r} cos(j x).
inline double dirichlet_cosine_sum(std::size_t r, double x) {
    double s = 1.0;
    for (std::size_t j = 1; j <= r; ++j) {
        s += 2.0 * std::cos(static_cast<double>(j) * x);
    }
    return s;
}

/// sin((r + 1/2) x) / sin(x / 2); x must not be a multiple of 2*pi.
inline double dirichlet_kernel(std::size_t r, double x) {
    return std::sin((static_cast<double>(r) + 0.5) * x) / std::sin(0.5 * x);
}

/// Laplacian eigenvalue of C_n^r at index j, cosine-sum form:
/// 2r - 2 * sum_{i=1..r} cos(2*pi*j*i/n).
inline double cycle_laplacian_eigenvalue_cosine(std::size_t n, std::size_t r, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 1; i <= r; ++i) {
        s += detail::cos_two_pi_ratio(j * i, n);
    }
    return 2.0 * static_cast<double>(r) - 2.0 * s;
}

/// Cancellation-free rewrite of the cosine sum: 4 * sum_{i=1..r} sin^2(pi*j*i/n).
inline double cycle_laplacian_eigenvalue_stable(std::size_t n, std::size_t r, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 1; i <= r; ++i) {
        const double v = detail::sin_pi_ratio(j * i, n);
        s += v * v;
    }
    return 4.0 * s;
}

/// Laplacian eigenvalue of C_n^r at index j:
/// (2r+1) - sin((2r+1)*pi*j/n) / sin(pi*j/n).
/// The ratio is a 0/0 form at j = 0 and ill-conditioned when sin(pi*j/n) is
/// tiny; it also cancels catastrophically when the eigenvalue is small next to
/// 2r+1. Those cases (j = 0, |sin(pi*j/n)| < 1e-6, result < 1) use the
/// sin^2 form of the cosine sum instead.
inline double cycle_laplacian_eigenvalue(std::size_t n, std::size_t r, std::size_t j) {
    j %= n;
    const double denom = detail::sin_pi_ratio(j, n);
    if (j == 0 || std::abs(denom) < 1e-6) {
        return cycle_laplacian_eigenvalue_stable(n, r, j);
    }
    const double numer = detail::sin_pi_ratio((2 * r + 1) * j, n);
    const double value = static_cast<double>(2 * r + 1) - numer / denom;
    return value < 1.0 ? cycle_laplacian_eigenvalue_stable(n, r, j) : value;
}

/// Sine-ratio form only (no fallback); undefined at j = 0 mod n.
inline double cycle_laplacian_eigenvalue_ratio(std::size_t n, std::size_t r, std::size_t j) {
    return static_cast<double>(2 * r + 1) - detail::sin_pi_ratio((2 * r + 1) * j, n) / detail::sin_pi_ratio(j, n);
}

/// Laplacian eigenvalues of C_n^r in index order j = 0..n-1.
inline std::vector<double> cycle_laplacian_eigenvalues(std::size_t n, std::size_t r) {
    validate_cycle_parameters(n, r);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = cycle_laplacian_eigenvalue(n, r, j);
    }
    return out;
}

inline Spectrum cycle_laplacian_spectrum(std::size_t n, std::size_t r) {
    Spectrum s{cycle_laplacian_eigenvalues(n, r), std::nullopt, SpectrumSource::ClosedForm};
    std::sort(s.values.begin(), s.values.end());
    return s;
}

/// Laplacian eigenvalues of the torus in row-major index-tuple order:
/// entry (j_1, ..., j_m) is the sum of the per-axis cycle eigenvalues.
inline std::vector<double> torus_laplacian_eigenvalues(const TorusSpec& spec) {
    spec.validate();
    std::vector<double> acc = cycle_laplacian_eigenvalues(spec.dims.front(), spec.r);
    for (std::size_t axis = 1; axis < spec.dims.size(); ++axis) {
        const auto axis_values = cycle_laplacian_eigenvalues(spec.dims[axis], spec.r);
        std::vector<double> next;
        next.reserve(acc.size() * axis_values.size());
        for (double a : acc) {
            for (double b : axis_values) {
                next.push_back(a + b);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

inline Spectrum torus_laplacian_spectrum(const TorusSpec& spec) {
    Spectrum s{torus_laplacian_eigenvalues(spec), std::nullopt, SpectrumSource::ClosedForm};
    std::sort(s.values.begin(), s.values.end());
    return s;
}

/// Full spectrum of a real symmetric matrix (ascending). Rejects input whose
/// asymmetry exceeds 1e-12 * max|M|.
inline Spectrum symmetric_eigendecomposition(const Eigen::MatrixXd& m, bool want_vectors) {
    if (m.rows() != m.cols()) {
        throw ValidationError("eigendecomposition needs a square matrix");
    }
    if (m.size() == 0) {
        return Spectrum{{}, std::nullopt, SpectrumSource::Numeric};
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw ValidationError("matrix is not symmetric (max asymmetry " + format_double(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric eigensolver did not converge");
    }
    Spectrum s;
    s.source = SpectrumSource::Numeric;
    s.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    if (want_vectors) {
        s.vectors = solver.eigenvectors();
    }
    return s;
}

inline Eigen::MatrixXd laplacian(const Graph& g) { return g.laplacian_matrix(); }

/// D^{-1/2} (D - A) D^{-1/2}.
inline Eigen::MatrixXd normalized_laplacian(const Graph& g) {
    const std::size_t n = g.node_count();
    Eigen::VectorXd inv_sqrt(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!(g.degree(i) > 0.0)) {
            throw DegeneracyError("node " + std::to_string(i) + " has zero degree");
        }
        inv_sqrt(static_cast<Eigen::Index>(i)) = 1.0 / std::sqrt(g.degree(i));
    }
    Eigen::MatrixXd l = g.laplacian_matrix();
    return inv_sqrt.asDiagonal() * l * inv_sqrt.asDiagonal();
}

/// Numeric Laplacian spectrum of an arbitrary graph.
inline Spectrum laplacian_spectrum(const Graph& g, bool want_vectors = false) {
    return symmetric_eigendecomposition(g.laplacian_matrix(), want_vectors);
}

/// Eigenvalues with |lambda| <= 1e-9 * max|lambda| count as zero.
inline double zero_tolerance(std::span<const double> values) {
    double scale = 0.0;
    for (double v : values) {
        scale = std::max(scale, std::abs(v));
    }
    return 1e-9 * scale;
}

inline std::size_t count_zero_eigenvalues(std::span<const double> values) {
    const double tol = zero_tolerance(values);
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [tol](double v) { return std::abs(v) <= tol; }));
}

/// Sum of reciprocals of the nonzero eigenvalues of a connected-graph
/// Laplacian, i.e. Tr(L^+). Values may be in any order.
inline double pinv_trace(std::span<const double> values) {
    const double tol = zero_tolerance(values);
    std::size_t zeros = 0;
    detail::CompensatedSum sum;
    for (double v : values) {
        if (std::abs(v) <= tol) {
            ++zeros;
        } else {
            sum.add(1.0 / v);
        }
    }
    if (zeros != 1) {
        throw DisconnectedGraphError("Laplacian spectrum has " + std::to_string(zeros) +
                                     " zero eigenvalues; expected exactly one (connected graph)");
    }
    return sum.value();
}

inline double pinv_trace(const Spectrum& spectrum) { return pinv_trace(spectrum.values); }

/// Second-smallest eigenvalue of a sorted Laplacian spectrum.
inline double algebraic_connectivity(const Spectrum& spectrum) {
    if (spectrum.values.size() < 2) {
        throw ParameterError("algebraic connectivity needs at least two eigenvalues");
    }
    const double lambda1 = spectrum.values[1];
    if (!(lambda1 > zero_tolerance(spectrum.values))) {
        throw DisconnectedGraphError("second-smallest Laplacian eigenvalue is zero (graph disconnected)");
    }
    return lambda1;
}

}  // namespace orw
