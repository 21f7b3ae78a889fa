#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "rgc/geometry.hpp"
#include "test_support.hpp"

using namespace rgc;

TEST(SamplePoints, EmptyCloudKeepsDimension)
{
    const auto cloud = sample_points({DensityKind::UniformCube, 2}, 0, 1);
    EXPECT_EQ(cloud.size(), 0u);
    EXPECT_EQ(cloud.dim(), 2);
}

TEST(SamplePoints, BallSamplesLieInUnitBall)
{
    const auto cloud = sample_points({DensityKind::UniformBall, 2}, 1000, 7);
    ASSERT_EQ(cloud.size(), 1000u);
    for (std::size_t i = 0; i < cloud.size(); ++i) EXPECT_LE(cloud.point(i).norm(), 1.0);
}

TEST(SamplePoints, BallInHighDimension)
{
    const auto cloud = sample_points({DensityKind::UniformBall, 7}, 500, 3);
    for (std::size_t i = 0; i < cloud.size(); ++i) EXPECT_LE(cloud.point(i).squaredNorm(), 1.0);
}

TEST(SamplePoints, CubeSamplesLieInUnitCube)
{
    const auto cloud = sample_points({DensityKind::UniformCube, 3}, 500, 5);
    EXPECT_GE(cloud.points.minCoeff(), 0.0);
    EXPECT_LT(cloud.points.maxCoeff(), 1.0);
}

TEST(SamplePoints, DeterministicForFixedSeed)
{
    const auto a = sample_points({DensityKind::UniformCube, 3}, 50, 9);
    const auto b = sample_points({DensityKind::UniformCube, 3}, 50, 9);
    ASSERT_EQ(a.points.size(), b.points.size());
    EXPECT_TRUE(std::equal(a.points.data(), a.points.data() + a.points.size(), b.points.data()));
    EXPECT_EQ(a.seed, 9u);
    EXPECT_EQ(a.density, (Density{DensityKind::UniformCube, 3}));

    const auto c = sample_points({DensityKind::UniformCube, 3}, 50, 10);
    EXPECT_FALSE(a.points.isApprox(c.points));
}

TEST(SamplePoints, GaussianMomentsAreStandard)
{
    const auto cloud = sample_points({DensityKind::Gaussian, 2}, 20000, 11);
    const Eigen::VectorXd mean = cloud.points.rowwise().mean();
    const Eigen::MatrixXd centered = cloud.points.colwise() - mean;
    const Eigen::MatrixXd cov = centered * centered.transpose() / static_cast<double>(cloud.size() - 1);
    EXPECT_NEAR(mean(0), 0.0, 0.05);
    EXPECT_NEAR(mean(1), 0.0, 0.05);
    EXPECT_NEAR(cov(0, 0), 1.0, 0.05);
    EXPECT_NEAR(cov(1, 1), 1.0, 0.05);
    EXPECT_NEAR(cov(0, 1), 0.0, 0.05);
}

TEST(SamplePoints, RejectsZeroDimension)
{
    EXPECT_THROW(sample_points({DensityKind::UniformCube, 0}, 10, 1), std::invalid_argument);
}

TEST(DensityNames, RoundTrip)
{
    for (auto kind : {DensityKind::UniformCube, DensityKind::UniformBall, DensityKind::Gaussian})
        EXPECT_EQ(parse_density(density_name(kind)), kind);
    EXPECT_THROW(parse_density("torus"), std::invalid_argument);
}

TEST(GeometricGraph, BoundaryDistanceIsAnEdge)
{
    const auto cloud = test::cloud_2d({{0, 0}, {0, 1}});
    const auto g = build_geometric_graph(cloud, 1.0);
    EXPECT_EQ(g.num_edges(), 1u);
    EXPECT_TRUE(g.adjacent(0, 1));
}

TEST(GeometricGraph, FarPointIsIsolated)
{
    const auto cloud = test::cloud_2d({{0, 0}, {0, 1}, {5, 5}});
    const auto g = build_geometric_graph(cloud, 1.0);
    EXPECT_EQ(g.num_edges(), 1u);
    EXPECT_EQ(g.degree(2), 0u);
}

TEST(GeometricGraph, MatchesBruteForceOnSeed42)
{
    const auto cloud = sample_points({DensityKind::UniformCube, 2}, 50, 42);
    const auto g = build_geometric_graph(cloud, 0.3);
    EXPECT_EQ(g.edges(), test::brute_force_edges(cloud, 0.3));
}

TEST(GeometricGraph, RejectsBadRadius)
{
    const auto cloud = test::cloud_2d({{0, 0}});
    EXPECT_THROW(build_geometric_graph(cloud, 0.0), std::invalid_argument);
    EXPECT_THROW(build_geometric_graph(cloud, -1.0), std::invalid_argument);
    EXPECT_THROW(build_geometric_graph(cloud, std::nan("")), std::invalid_argument);
    EXPECT_THROW(build_geometric_graph(cloud, INFINITY), std::invalid_argument);
}

TEST(GeometricGraph, NegativeCoordinatesUseCorrectCells)
{
    // Points straddling cell boundaries at negative coordinates.
    const auto cloud = test::cloud_2d({{-0.05, 0.0}, {0.04, 0.0}, {-0.25, -0.01}, {-0.16, 0.0}});
    const auto g = build_geometric_graph(cloud, 0.1);
    EXPECT_EQ(g.edges(), test::brute_force_edges(cloud, 0.1));
}

// Grid path equals brute force, and edge sets grow with r.
TEST(GeometricGraphProperty, GridEqualsBruteForceAndMonotone)
{
    test::Rng rng(2024);
    for (int iter = 0; iter < 60; ++iter) {
        const int d = 1 + static_cast<int>(rng.below(4));
        const auto n = static_cast<std::size_t>(rng.below(201));
        const auto kind = static_cast<DensityKind>(rng.below(3));
        const auto cloud = sample_points({kind, d}, n, rng.next());
        const double r1 = 0.02 + 0.5 * rng.uniform();
        const double r2 = r1 + 0.3 * rng.uniform();
        const auto g1 = build_geometric_graph(cloud, r1);
        const auto g2 = build_geometric_graph(cloud, r2);
        const auto e1 = g1.edges();
        const auto e2 = g2.edges();
        ASSERT_EQ(e1, test::brute_force_edges(cloud, r1)) << "d=" << d << " n=" << n;
        EXPECT_TRUE(std::includes(e2.begin(), e2.end(), e1.begin(), e1.end()));
        for (Vertex v = 0; v < g1.size(); ++v) {
            EXPECT_LE(g1.degree(v), n - 1);
            EXPECT_FALSE(g1.adjacent(v, v));
            for (Vertex u : g1.neighbors(v)) EXPECT_TRUE(g1.adjacent(u, v));
        }
    }
}

TEST(DeriveSeed, DistinctInputsGiveDistinctSeeds)
{
    EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 2, 4));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(2, 2, 3));
}
