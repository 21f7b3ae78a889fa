#include <gtest/gtest.h>

#include "rgc/homology.hpp"
#include "test_support.hpp"

using namespace rgc;

namespace {

using Betti = std::vector<long long>;

SimplicialComplex square_cycle()
{
    return SimplicialComplex::from_faces(4, 1, {{0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

SimplicialComplex octahedron()
{
    return rips_complex(build_geometric_graph(test::regular_polygon(6), 1.99), 3);
}

}  // namespace

TEST(PrimeField, Arithmetic)
{
    const PrimeField f(7);
    EXPECT_EQ(f.add(5, 4), 2u);
    EXPECT_EQ(f.sub(2, 5), 4u);
    EXPECT_EQ(f.mul(3, 5), 1u);
    EXPECT_EQ(f.neg(3), 4u);
    for (std::uint32_t a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_THROW(PrimeField(4), std::invalid_argument);
    EXPECT_THROW(PrimeField(1), std::invalid_argument);
    EXPECT_THROW(PrimeField(65537 * 2 + 1), std::invalid_argument);
}

TEST(BoundaryMatrix, EdgeColumn)
{
    const auto cx = SimplicialComplex::from_faces(2, 1, {{0}, {1}, {0, 1}});
    const auto b = boundary_matrix(cx, 1, PrimeField(3));
    ASSERT_EQ(b.matrix.cols(), 1u);
    ASSERT_EQ(b.matrix.columns[0].size(), 2u);
    // d[0,1] = [1] - [0]: row 0 gets -1 = 2 mod 3, row 1 gets +1.
    EXPECT_EQ(b.matrix.columns[0][0].row, 0u);
    EXPECT_EQ(b.matrix.columns[0][0].value, 2u);
    EXPECT_EQ(b.matrix.columns[0][1].row, 1u);
    EXPECT_EQ(b.matrix.columns[0][1].value, 1u);
    EXPECT_THROW(boundary_matrix(cx, 2, PrimeField(3)), std::out_of_range);
    EXPECT_THROW(boundary_matrix(cx, 0, PrimeField(3)), std::out_of_range);
}

TEST(BoundaryMatrix, TriangleRankAndSquareZero)
{
    const auto tri = SimplicialComplex::from_faces(3, 2, {{0, 1, 2}, {0, 1}, {0, 2}, {1, 2}, {0}, {1}, {2}});
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const PrimeField f(p);
        const auto d1 = boundary_matrix(tri, 1, f);
        const auto d2 = boundary_matrix(tri, 2, f);
        EXPECT_EQ(matrix_rank(d1.matrix, f), 2u);
        EXPECT_EQ(matrix_rank(d2.matrix, f), 1u);
        EXPECT_EQ(multiply(d1.matrix, d2.matrix, f).nonzeros(), 0u);
    }
}

TEST(BoundaryMatrix, SquareIsZeroOnRandomRips)
{
    const auto cloud = sample_points({DensityKind::UniformCube, 2}, 80, 3);
    const auto cx = rips_complex(build_geometric_graph(cloud, 0.3), 3);
    const PrimeField f(3);
    for (int k = 1; k < 3; ++k)
        EXPECT_EQ(multiply(boundary_matrix(cx, k, f).matrix, boundary_matrix(cx, k + 1, f).matrix, f).nonzeros(), 0u);
}

TEST(Betti, SquareIsACircle)
{
    EXPECT_EQ(betti_numbers(square_cycle(), 1).betti, (Betti{1, 1}));
    const auto cloud = test::cloud_2d({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    EXPECT_EQ(betti_numbers(rips_complex(build_geometric_graph(cloud, 1.6), 2), 1).betti, (Betti{1, 1}));
}

TEST(Betti, OctahedronIsASphere)
{
    for (std::uint32_t p : {2u, 3u}) EXPECT_EQ(betti_numbers(octahedron(), 2, PrimeField(p)).betti, (Betti{1, 0, 1}));
}

TEST(Betti, SimplexBoundaries)
{
    for (int j = 1; j <= 5; ++j) {
        const auto cx = test::simplex_boundary(j);
        const auto b = betti_numbers(cx, j - 1, PrimeField(3));
        Betti expected(static_cast<std::size_t>(j), 0);
        expected[0] += 1;
        expected[static_cast<std::size_t>(j - 1)] += 1;
        EXPECT_EQ(b.betti, expected) << "j=" << j;
    }
}

TEST(Betti, ReducedAndFaceCounts)
{
    const auto b = betti_numbers(test::simplex_boundary(3), 2, PrimeField(2), {.reduced = true});
    EXPECT_EQ(b.betti, (Betti{0, 0, 1}));
    EXPECT_TRUE(b.reduced);
    EXPECT_EQ(b.face_counts, (std::vector<std::size_t>{4, 6, 4, 0}));
}

TEST(Betti, CappedFlag)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < 4; ++i)
        for (Vertex j = i + 1; j < 4; ++j) edges.emplace_back(i, j);
    const auto k4 = graph_from_edges(4, edges);
    EXPECT_TRUE(betti_numbers(rips_complex(k4, 1), 1).capped);
    EXPECT_FALSE(betti_numbers(rips_complex(k4, 2), 1).capped);
    EXPECT_FALSE(betti_numbers(square_cycle(), 1).capped);
}

TEST(Euler, MatchesAlternatingBettiSum)
{
    EXPECT_EQ(euler_characteristic(square_cycle()), 0);
    EXPECT_EQ(euler_characteristic(octahedron()), 2);
    EXPECT_EQ(euler_characteristic(SimplicialComplex::from_faces(3, 2, {{0, 1, 2}, {0, 1}, {0, 2}, {1, 2}, {0}, {1}, {2}})), 1);
}

TEST(Euler, EqualsAlternatingBettiSumOnRandomComplexes)
{
    test::Rng rng(13);
    for (int iter = 0; iter < 20; ++iter) {
        const auto cloud = sample_points({DensityKind::UniformCube, 2}, 40, rng.next());
        // Clique complex of a planar-ish graph at full dimension, so the chain complex is complete.
        const auto cx = rips_complex(build_geometric_graph(cloud, 0.2), 12);
        ASSERT_FALSE(cx.truncated());
        const auto b = betti_numbers(cx, cx.max_dim(), PrimeField(2));
        long long alt = 0;
        for (std::size_t k = 0; k < b.betti.size(); ++k) alt += (k % 2 ? -1 : 1) * b.betti[k];
        EXPECT_EQ(alt, euler_characteristic(cx));
    }
}

TEST(BettiProperty, MatchesDenseEliminationAcrossPrimes)
{
    test::Rng rng(99);
    for (int iter = 0; iter < 30; ++iter) {
        const auto n = 5 + rng.below(56);
        const auto cloud = sample_points({DensityKind::UniformCube, 2}, n, rng.next());
        const double r = 0.1 + 0.3 * rng.uniform();
        const auto cx = rips_complex(build_geometric_graph(cloud, r), 3);
        const auto b2 = betti_numbers(cx, 2, PrimeField(2));
        const auto b3 = betti_numbers(cx, 2, PrimeField(3));
        EXPECT_EQ(b2.betti, test::dense_betti(cx, 2, 2));
        EXPECT_EQ(b3.betti, test::dense_betti(cx, 2, 3));
        EXPECT_EQ(b2.betti, b3.betti);
    }
}

TEST(BettiProperty, DisjointUnionIsAdditive)
{
    const std::vector<SimplicialComplex> parts{square_cycle(), octahedron(), test::simplex_boundary(4),
                                               test::simplex_boundary(2)};
    for (const auto& a : parts)
        for (const auto& b : parts) {
            const auto u = test::disjoint_union(a, b);
            const auto bu = betti_numbers(u, 3, PrimeField(3)).betti;
            const auto ba = betti_numbers(a, 3, PrimeField(3)).betti;
            const auto bb = betti_numbers(b, 3, PrimeField(3)).betti;
            for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(bu[k], ba[k] + bb[k]);
            EXPECT_EQ(euler_characteristic(u), euler_characteristic(a) + euler_characteristic(b));
        }
}

TEST(BettiProperty, SmallCliqueComplexesHaveNoHighHomology)
{
    // A clique complex needs at least 2k+2 vertices to carry beta_k.
    test::Rng rng(4);
    for (int iter = 0; iter < 200; ++iter) {
        const int k = 1 + static_cast<int>(rng.below(2));
        const auto n = static_cast<std::size_t>(2 * k + 1);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j)
                if (rng.uniform() < 0.6) edges.emplace_back(i, j);
        const auto cx = rips_complex(graph_from_edges(n, edges), k + 1);
        EXPECT_EQ(betti_numbers(cx, k).betti[static_cast<std::size_t>(k)], 0);
    }
}

TEST(BettiProperty, PlanarCechHasNoHomologyAboveOne)
{
    test::Rng rng(8);
    for (int iter = 0; iter < 15; ++iter) {
        const auto cloud = sample_points({DensityKind::UniformCube, 2}, 40, rng.next());
        const auto cx = cech_complex(cloud, 0.25 + 0.2 * rng.uniform(), 4);
        const auto b = betti_numbers(cx, 3, PrimeField(2));
        EXPECT_EQ(b.betti[2], 0);
        EXPECT_EQ(b.betti[3], 0);
    }
}

TEST(FieldAnomalies, ProjectivePlaneHasTorsion)
{
    // Six-vertex triangulation of RP^2: H_1 = Z/2, so GF(2) and GF(3) disagree in degrees 1 and 2.
    std::vector<std::vector<Vertex>> tris{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                          {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}};
    std::vector<std::vector<Vertex>> faces;
    for (const auto& t : tris) {
        faces.push_back(t);
        faces.push_back({t[0], t[1]});
        faces.push_back({t[0], t[2]});
        faces.push_back({t[1], t[2]});
        for (auto v : t) faces.push_back({v});
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    const auto rp2 = SimplicialComplex::from_faces(6, 2, faces);
    EXPECT_EQ(betti_numbers(rp2, 2, PrimeField(2)).betti, (Betti{1, 1, 1}));
    EXPECT_EQ(betti_numbers(rp2, 2, PrimeField(3)).betti, (Betti{1, 0, 0}));
    EXPECT_EQ(field_anomalies(rp2, 2), (std::vector<int>{1, 2}));
    EXPECT_TRUE(field_anomalies(octahedron(), 2).empty());
}
