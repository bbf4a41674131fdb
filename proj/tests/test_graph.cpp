#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "orw/graph.hpp"

using namespace orw;

TEST(BuildCycle, FourCycle) {
    const Graph g = build_cycle(4, 1);
    ASSERT_EQ(g.node_count(), 4u);
    EXPECT_EQ(std::vector<NodeId>(g.neighbors(0).begin(), g.neighbors(0).end()), (std::vector<NodeId>{1, 3}));
    for (NodeId i = 0; i < 4; ++i) {
        EXPECT_EQ(g.degree(i), 2.0);
    }
    EXPECT_TRUE(g.is_binary());
}

TEST(BuildCycle, TriangleIsComplete) {
    const Graph g = build_cycle(3, 1);
    const Eigen::MatrixXd a = g.adjacency_matrix();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(a(i, j), i == j ? 0.0 : 1.0);
        }
    }
    EXPECT_EQ(g, build_complete(3));
}

TEST(BuildCycle, EdgeCountMatchesNTimesR) {
    const Graph g = build_cycle(300, 5);
    EXPECT_EQ(oracle::count_edges_dense(g), 1500u);
    EXPECT_EQ(g.edge_count(), 1500u);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        ASSERT_EQ(g.degree(i), 10.0);
    }
}

TEST(BuildCycle, RejectsInvalidParameters) {
    EXPECT_THROW(build_cycle(2, 1), ParameterError);
    EXPECT_THROW(build_cycle(5, 0), ParameterError);
    EXPECT_THROW(build_cycle(6, 3), ParameterError);  // 2r+1 = 7 > 6
    try {
        build_cycle(6, 3);
    } catch (const ParameterError& e) {
        EXPECT_NE(std::string(e.what()).find("2r+1 <= n"), std::string::npos);
    }
}

TEST(BuildCycle, AdjacencyIsCirculantProperty) {
    for (std::size_t n = 3; n <= 40; ++n) {
        for (std::size_t r = 1; 2 * r + 1 <= n; ++r) {
            const Eigen::MatrixXd a = build_cycle(n, r).adjacency_matrix();
            const auto m = static_cast<Eigen::Index>(n);
            for (Eigen::Index i = 0; i + 1 < m; ++i) {
                for (Eigen::Index j = 0; j < m; ++j) {
                    ASSERT_EQ(a(i + 1, (j + 1) % m), a(i, j)) << "n=" << n << " r=" << r;
                }
            }
            ASSERT_EQ(a.rowwise().sum().minCoeff(), 2.0 * static_cast<double>(r));
        }
    }
}

TEST(CartesianProduct, TriangleSquared) {
    const Graph k3 = build_complete(3);
    const Graph g = cartesian_product(k3, k3);
    EXPECT_EQ(g.node_count(), 9u);
    for (NodeId i = 0; i < 9; ++i) {
        EXPECT_EQ(g.degree(i), 4.0);
    }
}

TEST(CartesianProduct, AdjacencyRule) {
    const Graph g1 = build_cycle(4, 1);
    const Graph g2 = build_cycle(5, 2);
    const Graph g = cartesian_product(g1, g2);
    for (NodeId u1 = 0; u1 < 4; ++u1) {
        for (NodeId u2 = 0; u2 < 5; ++u2) {
            for (NodeId v1 = 0; v1 < 4; ++v1) {
                for (NodeId v2 = 0; v2 < 5; ++v2) {
                    const bool expected = (u1 == v1 && g2.weight(u2, v2) != 0.0) ||
                                          (u2 == v2 && g1.weight(u1, v1) != 0.0);
                    ASSERT_EQ(g.weight(u1 * 5 + u2, v1 * 5 + v2) != 0.0, expected);
                }
            }
        }
    }
}

TEST(CartesianProduct, EdgeCountPropertyOnRandomGraphs) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Graph g1 = oracle::random_graph(3 + seed % 6, 0.4, seed);
        const Graph g2 = oracle::random_graph(2 + seed % 5, 0.5, seed + 1000);
        const Graph g = cartesian_product(g1, g2);
        const std::size_t expected = g1.node_count() * g2.edge_count() + g2.node_count() * g1.edge_count();
        ASSERT_EQ(oracle::count_edges_dense(g), expected) << "seed " << seed;
    }
}

TEST(CartesianProduct, KeepsWeights) {
    const Graph g1 = Graph::from_edges(2, std::vector<Edge>{{0, 1, 2.5}});
    const Graph g2 = Graph::from_edges(2, std::vector<Edge>{{0, 1, 0.5}});
    const Graph g = cartesian_product(g1, g2);
    EXPECT_EQ(g.weight(0, 2), 2.5);
    EXPECT_EQ(g.weight(0, 1), 0.5);
    EXPECT_FALSE(g.is_binary());
}

TEST(BuildTorus, OneDimensionIsCycle) { EXPECT_EQ(build_torus({{4}, 1}), build_cycle(4, 1)); }

TEST(BuildTorus, FourByFour) {
    const Graph g = build_torus({{4, 4}, 1});
    EXPECT_EQ(g.node_count(), 16u);
    for (NodeId i = 0; i < 16; ++i) {
        EXPECT_EQ(g.degree(i), 4.0);
    }
}

TEST(BuildTorus, FourDimensionalSpotCheck) {
    const Graph g = build_torus({{16, 18, 20, 22}, 4});
    EXPECT_EQ(g.node_count(), 126720u);
    for (NodeId i = 0; i < g.node_count(); i += 997) {
        ASSERT_EQ(g.degree(i), 32.0) << "node " << i;
        ASSERT_EQ(g.neighbors(i).size(), 32u);
    }
    EXPECT_EQ(g.edge_count(), 126720u * 16u);
}

TEST(BuildTorus, RowMajorIndexing) {
    // Node (x1, x2) = x1 * k2 + x2; moving along axis 2 changes the index by one.
    const Graph g = build_torus({{5, 7}, 1});
    EXPECT_NE(g.weight(3 * 7 + 2, 3 * 7 + 3), 0.0);
    EXPECT_NE(g.weight(3 * 7 + 2, 4 * 7 + 2), 0.0);
    EXPECT_NE(g.weight(0 * 7 + 0, 0 * 7 + 6), 0.0);  // wrap on axis 2
    EXPECT_NE(g.weight(0 * 7 + 0, 4 * 7 + 0), 0.0);  // wrap on axis 1
}

TEST(BuildTorus, TransposedDimsAreIsomorphic) {
    const std::size_t a = 5;
    const std::size_t b = 7;
    const Graph g = build_torus({{a, b}, 2});
    const Graph h = build_torus({{b, a}, 2});
    for (NodeId x = 0; x < a; ++x) {
        for (NodeId y = 0; y < b; ++y) {
            for (NodeId x2 = 0; x2 < a; ++x2) {
                for (NodeId y2 = 0; y2 < b; ++y2) {
                    ASSERT_EQ(g.weight(x * b + y, x2 * b + y2), h.weight(y * a + x, y2 * a + x2));
                }
            }
        }
    }
}

TEST(BuildTorus, RegularDegreeProperty) {
    for (std::size_t r = 1; r <= 2; ++r) {
        for (const auto& dims : std::vector<std::vector<std::size_t>>{{5, 6}, {7, 5, 6}, {5, 5, 5, 5}}) {
            const Graph g = build_torus({dims, r});
            for (NodeId i = 0; i < g.node_count(); ++i) {
                ASSERT_EQ(g.degree(i), static_cast<double>(2 * r * dims.size()));
            }
        }
    }
}

TEST(TorusSpec, Validation) {
    EXPECT_THROW(TorusSpec({}, 1).validate(), ParameterError);
    EXPECT_THROW(TorusSpec({{2, 5}, 1}).validate(), ParameterError);
    EXPECT_THROW(TorusSpec({{5, 4}, 2}).validate(), ParameterError);
    EXPECT_THROW(TorusSpec({{5}, 0}).validate(), ParameterError);
    EXPECT_NO_THROW(TorusSpec({{5, 5}, 2}).validate());
    EXPECT_EQ(TorusSpec({{16, 18, 20, 22}, 4}).node_count(), 126720u);
}

TEST(Graph, FromEdgesValidation) {
    EXPECT_THROW(Graph::from_edges(3, std::vector<Edge>{{0, 3, 1.0}}), ValidationError);
    EXPECT_THROW(Graph::from_edges(3, std::vector<Edge>{{1, 1, 1.0}}), ValidationError);
    EXPECT_THROW(Graph::from_edges(3, std::vector<Edge>{{0, 1, -1.0}}), ValidationError);
    EXPECT_THROW(Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {1, 0, 2.0}}), ValidationError);
    EXPECT_THROW(Graph::from_edges(0, std::vector<Edge>{}), ParameterError);
    const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {1, 0, 1.0}});
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Graph, FromDenseValidation) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 1) = 1.0;
    EXPECT_THROW(Graph::from_dense(m), ValidationError);
    m(1, 0) = 1.0;
    EXPECT_NO_THROW(Graph::from_dense(m));
    m(2, 2) = 1.0;
    EXPECT_THROW(Graph::from_dense(m), ValidationError);
}

TEST(Graph, LaplacianRowSumsVanish) {
    const Graph g = oracle::random_connected_graph(20, 0.2, false, 7);
    const Eigen::MatrixXd l = g.laplacian_matrix();
    EXPECT_LT(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(l.diagonal().sum(), g.volume(), 1e-12);
}

TEST(Graph, Connectivity) {
    EXPECT_TRUE(is_connected(build_cycle(10, 1)));
    EXPECT_FALSE(is_connected(Graph::from_edges(4, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}})));
    EXPECT_TRUE(is_connected(Graph::from_edges(1, std::vector<Edge>{})));
}

TEST(EdgeList, RoundTripPreservesGraph) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = oracle::random_connected_graph(15, 0.3, seed % 2 == 0, seed);
        std::stringstream buf;
        write_edge_list(buf, g);
        EXPECT_EQ(read_edge_list(buf), g);
    }
}

TEST(EdgeList, Format) {
    std::stringstream buf;
    write_edge_list(buf, build_cycle(3, 1));
    EXPECT_EQ(buf.str(), "n 3\n0 1 1\n0 2 1\n1 2 1\n");
}

TEST(EdgeList, RejectsMalformedInput) {
    std::istringstream no_header("0 1 1\n");
    EXPECT_THROW(read_edge_list(no_header), ValidationError);
    std::istringstream bad_triple("n 3\n0 1\n");
    EXPECT_THROW(read_edge_list(bad_triple), ValidationError);
    std::istringstream out_of_range("n 2\n0 5 1\n");
    EXPECT_THROW(read_edge_list(out_of_range), ValidationError);
    std::istringstream empty("");
    EXPECT_THROW(read_edge_list(empty), ValidationError);
}
