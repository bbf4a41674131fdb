#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "orw/spectral.hpp"

using namespace orw;

namespace {

std::vector<double> dense_sorted_eigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

}  // namespace

TEST(CycleEigenvalues, FourCycle) {
    const auto s = cycle_laplacian_spectrum(4, 1);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_NEAR(s.values[0], 0.0, 1e-15);
    EXPECT_NEAR(s.values[1], 2.0, 1e-14);
    EXPECT_NEAR(s.values[2], 2.0, 1e-14);
    EXPECT_NEAR(s.values[3], 4.0, 1e-14);
    EXPECT_EQ(s.source, SpectrumSource::ClosedForm);
}

TEST(CycleEigenvalues, CompleteCaseIsFlat) {
    // 2r+1 = n gives K_n: eigenvalue n with multiplicity n-1.
    for (std::size_t r = 1; r <= 6; ++r) {
        const std::size_t n = 2 * r + 1;
        const auto s = cycle_laplacian_spectrum(n, r);
        EXPECT_NEAR(s.values[0], 0.0, 1e-13);
        for (std::size_t j = 1; j < n; ++j) {
            EXPECT_NEAR(s.values[j], static_cast<double>(n), 1e-12);
        }
    }
}

TEST(CycleEigenvalues, ZeroIndexIsExactlyZero) {
    for (std::size_t n : {3u, 10u, 301u}) {
        EXPECT_EQ(cycle_laplacian_eigenvalue(n, 1, 0), 0.0);
    }
}

TEST(CycleEigenvalues, FormsAgreeProperty) {
    for (std::size_t n = 3; n <= 80; ++n) {
        for (std::size_t r = 1; 2 * r + 1 <= n; ++r) {
            for (std::size_t j = 1; j < n; ++j) {
                const double cosine = cycle_laplacian_eigenvalue_cosine(n, r, j);
                const double ratio = cycle_laplacian_eigenvalue_ratio(n, r, j);
                const double chosen = cycle_laplacian_eigenvalue(n, r, j);
                const double scale = 4.0 * static_cast<double>(r);
                ASSERT_NEAR(cosine, ratio, 1e-12 * scale) << n << ' ' << r << ' ' << j;
                ASSERT_NEAR(chosen, cycle_laplacian_eigenvalue_stable(n, r, j), 1e-12 * scale);
            }
        }
    }
}

TEST(CycleEigenvalues, SymmetricInIndex) {
    for (std::size_t n = 5; n <= 40; ++n) {
        for (std::size_t j = 1; j < n; ++j) {
            EXPECT_NEAR(cycle_laplacian_eigenvalue(n, 2, j), cycle_laplacian_eigenvalue(n, 2, n - j), 1e-12);
        }
    }
}

TEST(CycleEigenvalues, SmallEigenvalueKeepsRelativeAccuracy) {
    // lambda_1 of C_n^1 is 4 sin^2(pi/n); the plain ratio form loses digits here.
    for (std::size_t n : {300u, 1000u, 100000u}) {
        const double exact = 4.0 * std::pow(std::sin(std::numbers::pi / static_cast<double>(n)), 2);
        EXPECT_NEAR(cycle_laplacian_eigenvalue(n, 1, 1) / exact, 1.0, 1e-14) << n;
    }
}

TEST(CycleEigenvalues, MatchNumericSolverProperty) {
    for (std::size_t n = 4; n <= 48; n += 4) {
        for (std::size_t r = 1; 2 * r + 1 <= n && r <= 5; ++r) {
            const auto closed = cycle_laplacian_spectrum(n, r).values;
            const auto numeric = dense_sorted_eigenvalues(build_cycle(n, r).laplacian_matrix());
            ASSERT_LT(max_abs_diff(closed, numeric), 1e-9) << "n=" << n << " r=" << r;
        }
    }
}

TEST(CycleEigenvalues, RejectsInvalid) {
    EXPECT_THROW(cycle_laplacian_eigenvalues(4, 2), ParameterError);
    EXPECT_THROW(cycle_laplacian_eigenvalues(2, 1), ParameterError);
}

TEST(Circulant, MatchesDenseEigenvaluesProperty) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::size_t n = 3; n <= 16; ++n) {
        // Symmetric first row: a_k = a_{n-k}, so the spectrum is real.
        std::vector<double> row(n);
        for (std::size_t k = 0; k <= n / 2; ++k) {
            row[k] = row[(n - k) % n] = unit(rng);
        }
        const auto lambdas = circulant_eigenvalues(row);
        std::vector<double> real;
        for (const auto& z : lambdas) {
            ASSERT_LT(std::abs(z.imag()), 1e-12);
            real.push_back(z.real());
        }
        std::sort(real.begin(), real.end());
        const auto dense = dense_sorted_eigenvalues(oracle::circulant_matrix(row));
        ASSERT_LT(max_abs_diff(real, dense), 1e-12) << "n=" << n;
    }
}

TEST(Circulant, CycleFirstRowGivesClosedForm) {
    const std::size_t n = 11;
    const std::size_t r = 3;
    std::vector<double> row(n, 0.0);
    row[0] = 2.0 * r;
    for (std::size_t i = 1; i <= r; ++i) {
        row[i] = row[n - i] = -1.0;
    }
    const auto lambdas = circulant_eigenvalues(row);
    for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(lambdas[j].real(), cycle_laplacian_eigenvalue(n, r, j), 1e-12);
    }
}

TEST(Dirichlet, KernelEqualsCosineSumProperty) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.01, 2.0 * std::numbers::pi - 0.01);
    for (int trial = 0; trial < 500; ++trial) {
        const double x = angle(rng);
        const std::size_t r = 1 + static_cast<std::size_t>(trial % 12);
        ASSERT_NEAR(dirichlet_kernel(r, x), dirichlet_cosine_sum(r, x), 1e-9) << "x=" << x << " r=" << r;
    }
}

TEST(TorusEigenvalues, SumOfAxisEigenvalues) {
    const TorusSpec spec{{5, 7}, 2};
    const auto values = torus_laplacian_eigenvalues(spec);
    ASSERT_EQ(values.size(), 35u);
    for (std::size_t j1 = 0; j1 < 5; ++j1) {
        for (std::size_t j2 = 0; j2 < 7; ++j2) {
            EXPECT_DOUBLE_EQ(values[j1 * 7 + j2],
                             cycle_laplacian_eigenvalue(5, 2, j1) + cycle_laplacian_eigenvalue(7, 2, j2));
        }
    }
}

TEST(TorusEigenvalues, MatchNumericSolver) {
    for (const TorusSpec& spec : {TorusSpec{{4, 4}, 1}, TorusSpec{{5, 6}, 2}, TorusSpec{{5, 4, 3}, 1},
                                  TorusSpec{{3, 3, 3, 3}, 1}}) {
        const auto closed = torus_laplacian_spectrum(spec).values;
        const auto numeric = dense_sorted_eigenvalues(build_torus(spec).laplacian_matrix());
        EXPECT_LT(max_abs_diff(closed, numeric), 1e-9) << spec.label();
    }
}

TEST(TorusEigenvalues, SingleZero) {
    const auto values = torus_laplacian_eigenvalues({{16, 18, 20}, 3});
    EXPECT_EQ(count_zero_eigenvalues(values), 1u);
    EXPECT_EQ(values.front(), 0.0);
}

TEST(SymmetricEigendecomposition, RejectsAsymmetric) {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 2.0, 2.5, 1.0;
    EXPECT_THROW(symmetric_eigendecomposition(m, false), ValidationError);
    EXPECT_THROW(symmetric_eigendecomposition(Eigen::MatrixXd(2, 3), false), ValidationError);
}

TEST(SymmetricEigendecomposition, VectorsReconstructMatrix) {
    const Graph g = oracle::random_connected_graph(18, 0.2, false, 5);
    const Eigen::MatrixXd l = g.laplacian_matrix();
    const Spectrum s = symmetric_eigendecomposition(l, true);
    ASSERT_TRUE(s.vectors.has_value());
    const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(s.values.data(), 18);
    const Eigen::MatrixXd rebuilt = *s.vectors * lambda.asDiagonal() * s.vectors->transpose();
    EXPECT_LT((rebuilt - l).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_TRUE(std::is_sorted(s.values.begin(), s.values.end()));
}

TEST(NormalizedLaplacian, SpectrumInZeroTwo) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = oracle::random_connected_graph(20, 0.15, seed % 2 == 1, seed);
        const auto s = symmetric_eigendecomposition(normalized_laplacian(g), false);
        EXPECT_NEAR(s.values.front(), 0.0, 1e-12);
        EXPECT_LE(s.values.back(), 2.0 + 1e-12);
        EXPECT_EQ(count_zero_eigenvalues(s.values), 1u);
    }
}

TEST(NormalizedLaplacian, IsolatedNodeIsDegenerate) {
    const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}});
    EXPECT_THROW(normalized_laplacian(g), DegeneracyError);
}

TEST(PinvTrace, MatchesDenseOracleProperty) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = oracle::random_connected_graph(5 + seed, 0.2, seed % 3 == 0, seed);
        const double ours = pinv_trace(laplacian_spectrum(g));
        const double oracle = oracle::dense_pinv_trace(g.laplacian_matrix());
        ASSERT_NEAR(ours, oracle, 1e-9 * std::max(1.0, oracle)) << "seed " << seed;
    }
}

TEST(PinvTrace, KnownValues) {
    // C_n^1: Tr(L^+) = (n^2 - 1) / 12.  K_n: (n - 1) / n.
    EXPECT_NEAR(pinv_trace(cycle_laplacian_eigenvalues(300, 1)), (300.0 * 300.0 - 1.0) / 12.0, 1e-9);
    EXPECT_NEAR(pinv_trace(laplacian_spectrum(build_complete(7))), 6.0 / 7.0, 1e-13);
}

TEST(PinvTrace, DisconnectedSpectrumRejected) {
    const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}});
    EXPECT_THROW(pinv_trace(laplacian_spectrum(g)), DisconnectedGraphError);
    EXPECT_THROW(algebraic_connectivity(laplacian_spectrum(g)), DisconnectedGraphError);
}

TEST(AlgebraicConnectivity, CycleValue) {
    EXPECT_NEAR(algebraic_connectivity(cycle_laplacian_spectrum(10, 1)),
                4.0 * std::pow(std::sin(std::numbers::pi / 10.0), 2), 1e-14);
    EXPECT_THROW(algebraic_connectivity(Spectrum{{0.0}, std::nullopt, SpectrumSource::Numeric}), ParameterError);
}
