#include <gtest/gtest.h>

#include <cmath>

#include "rgc/complex.hpp"
#include "rgc/meb.hpp"
#include "test_support.hpp"

using namespace rgc;

namespace {

Eigen::MatrixXd columns(std::initializer_list<std::initializer_list<double>> pts)
{
    const auto d = static_cast<Eigen::Index>(pts.begin()->size());
    Eigen::MatrixXd m(d, static_cast<Eigen::Index>(pts.size()));
    Eigen::Index j = 0;
    for (auto& p : pts) {
        Eigen::Index i = 0;
        for (double x : p) m(i++, j) = x;
        ++j;
    }
    return m;
}

}  // namespace

TEST(MinEnclosingBall, TwoPoints)
{
    const auto ball = min_enclosing_ball(columns({{0, 0}, {2, 0}}));
    EXPECT_NEAR(ball.radius, 1.0, 1e-12);
    EXPECT_NEAR(ball.center(0), 1.0, 1e-12);
    EXPECT_NEAR(ball.center(1), 0.0, 1e-12);
}

TEST(MinEnclosingBall, EquilateralTriangle)
{
    const auto ball = min_enclosing_ball(test::equilateral_triangle(1.0).points);
    EXPECT_NEAR(ball.radius, 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(MinEnclosingBall, ObtuseTriangleUsesLongestSide)
{
    const auto ball = min_enclosing_ball(columns({{0, 0}, {4, 0}, {2, 1}}));
    EXPECT_NEAR(ball.radius, 2.0, 1e-12);
    EXPECT_NEAR(ball.center(0), 2.0, 1e-12);
    EXPECT_NEAR(ball.center(1), 0.0, 1e-12);
}

TEST(MinEnclosingBall, CollinearAndDuplicatePoints)
{
    EXPECT_NEAR(min_enclosing_ball(columns({{0, 0}, {1, 1}, {3, 3}, {2, 2}})).radius, 1.5 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(min_enclosing_ball(columns({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})).radius, 0.0, 1e-12);
}

TEST(MinEnclosingBall, RegularTetrahedron)
{
    const auto ball = min_enclosing_ball(columns({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}));
    EXPECT_NEAR(ball.radius, std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(ball.center.norm(), 0.0, 1e-12);
}

TEST(MinEnclosingBall, VectorOverloadAndErrors)
{
    EXPECT_NEAR(min_enclosing_ball(std::vector<std::vector<double>>{{0.0}, {3.0}}).radius, 1.5, 1e-12);
    EXPECT_THROW(min_enclosing_ball(Eigen::MatrixXd(2, 0)), std::invalid_argument);
    EXPECT_THROW(min_enclosing_ball(std::vector<std::vector<double>>{}), std::invalid_argument);
    EXPECT_THROW(min_enclosing_ball(std::vector<std::vector<double>>{{0.0, 1.0}, {2.0}}), std::invalid_argument);
}

TEST(MinEnclosingBall, FloatScalar)
{
    Eigen::MatrixXf m(2, 2);
    m << 0, 2, 0, 0;
    EXPECT_NEAR(min_enclosing_ball(m).radius, 1.0f, 1e-6f);
}

TEST(MinEnclosingBallProperty, MatchesOracles)
{
    test::Rng rng(77);
    for (int iter = 0; iter < 40; ++iter) {
        const int d = 2 + static_cast<int>(rng.below(2));
        const auto n = 1 + rng.below(9);
        Eigen::MatrixXd pts(d, static_cast<Eigen::Index>(n));
        for (Eigen::Index j = 0; j < pts.cols(); ++j)
            for (Eigen::Index i = 0; i < d; ++i) pts(i, j) = rng.uniform();
        const auto ball = min_enclosing_ball(pts);
        EXPECT_NEAR(ball.radius, test::support_enumeration_meb_radius(pts), 1e-9);
        EXPECT_NEAR(ball.radius, test::grid_search_meb_radius(pts), 1e-6);
        for (Eigen::Index j = 0; j < pts.cols(); ++j) EXPECT_LE((pts.col(j) - ball.center).norm(), ball.radius + 1e-12);
    }
}

TEST(RipsComplex, SquareHasNoTriangles)
{
    const auto cloud = test::cloud_2d({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    const auto cx = rips_complex(build_geometric_graph(cloud, 1.6), 2);
    EXPECT_EQ(cx.f_vector(), (std::vector<std::size_t>{4, 4, 0}));
    EXPECT_FALSE(cx.truncated());
    EXPECT_EQ(cx.type(), ComplexType::Rips);
}

TEST(RipsComplex, CompleteGraphOnFive)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < 5; ++i)
        for (Vertex j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
    const auto cx = rips_complex(graph_from_edges(5, edges), 3);
    EXPECT_EQ(cx.f_vector(), (std::vector<std::size_t>{5, 10, 10, 5}));
    EXPECT_TRUE(cx.truncated());
    EXPECT_FALSE(rips_complex(graph_from_edges(5, edges), 4).truncated());
}

TEST(RipsComplex, HexagonIsOctahedron)
{
    const auto cloud = test::regular_polygon(6);
    const auto cx = rips_complex(build_geometric_graph(cloud, 1.99), 3);
    EXPECT_EQ(cx.f_vector(), (std::vector<std::size_t>{6, 12, 8, 0}));
    EXPECT_EQ(test::face_set(cx), test::brute_force_rips(cloud, 1.99, 3));
}

TEST(RipsComplex, FacesAreSortedAndFindable)
{
    const auto cloud = sample_points({DensityKind::UniformCube, 2}, 60, 5);
    const auto cx = rips_complex(build_geometric_graph(cloud, 0.25), 3);
    EXPECT_TRUE(cx.is_downward_closed());
    for (int k = 0; k <= 3; ++k)
        for (std::size_t i = 0; i < cx.num_faces(k); ++i) {
            const auto f = cx.face(k, i);
            EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
            EXPECT_EQ(cx.find(f), i);
            if (i > 0) {
                const auto g = cx.face(k, i - 1);
                EXPECT_TRUE(std::lexicographical_compare(g.begin(), g.end(), f.begin(), f.end()));
            }
        }
    const std::vector<Vertex> missing{0, 1000};
    EXPECT_FALSE(cx.contains(missing));
}

TEST(CechComplex, TriangleFillsOnlyBelowThreshold)
{
    // Circumradius s/sqrt(3): 0.52 for s=0.9, 0.46 for s=0.8, against r/2 = 0.5.
    const auto wide = cech_complex(test::equilateral_triangle(0.9), 1.0, 2);
    EXPECT_EQ(wide.f_vector(), (std::vector<std::size_t>{3, 3, 0}));
    const auto tight = cech_complex(test::equilateral_triangle(0.8), 1.0, 2);
    EXPECT_EQ(tight.f_vector(), (std::vector<std::size_t>{3, 3, 1}));
    EXPECT_EQ(tight.type(), ComplexType::Cech);
}

TEST(CechComplex, SubcomplexOfRipsWithSameSkeleton)
{
    const auto cloud = sample_points({DensityKind::UniformCube, 2}, 30, 11);
    const auto graph = build_geometric_graph(cloud, 0.4);
    const auto rips = rips_complex(graph, 3);
    const auto cech = cech_complex(cloud, 0.4, 3);
    EXPECT_TRUE(cech.is_downward_closed());
    EXPECT_EQ(cech.num_faces(0), rips.num_faces(0));
    EXPECT_EQ(cech.num_faces(1), rips.num_faces(1));
    const auto rs = test::face_set(rips);
    for (const auto& f : test::face_set(cech)) EXPECT_TRUE(rs.count(f)) << f.size();
    EXPECT_LT(cech.num_faces(2), rips.num_faces(2));
    EXPECT_EQ(test::face_set(cech), test::face_set(cech_complex(cloud, graph, 3)));
}

TEST(CechComplex, FaceTestMatchesBallRadius)
{
    const auto cloud = test::equilateral_triangle(0.8);
    const std::vector<Vertex> all{0, 1, 2};
    EXPECT_TRUE(cech_face_test(cloud, all, 2.0 * 0.8 / std::sqrt(3.0)));
    EXPECT_FALSE(cech_face_test(cloud, all, 2.0 * 0.8 / std::sqrt(3.0) * (1 - 1e-6)));
}

TEST(ComplexBudget, ExceedingFaceBudgetThrows)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < 12; ++i)
        for (Vertex j = i + 1; j < 12; ++j) edges.emplace_back(i, j);
    EXPECT_THROW(rips_complex(graph_from_edges(12, edges), 5, {.max_faces = 100}), ResourceError);
}

TEST(ComplexFromFaces, SortsAndValidates)
{
    const auto cx = SimplicialComplex::from_faces(3, 1, {{1, 0}, {0}, {1}, {2}});
    EXPECT_EQ(cx.f_vector(), (std::vector<std::size_t>{3, 1}));
    EXPECT_TRUE(cx.contains(std::vector<Vertex>{0, 1}));
    EXPECT_THROW(SimplicialComplex::from_faces(2, 1, {{0, 5}}), std::invalid_argument);
    EXPECT_THROW(SimplicialComplex::from_faces(3, 1, {{0, 1, 2}}), std::invalid_argument);
}

TEST(ComplexProperty, RipsAndCechMatchBruteForce)
{
    test::Rng rng(505);
    for (int iter = 0; iter < 40; ++iter) {
        const int d = 2 + static_cast<int>(rng.below(2));
        const auto n = 1 + rng.below(10);
        const auto cloud = sample_points({DensityKind::UniformCube, d}, n, rng.next());
        const double r = 0.2 + 0.8 * rng.uniform();
        const auto graph = build_geometric_graph(cloud, r);
        EXPECT_EQ(test::face_set(rips_complex(graph, 3)), test::brute_force_rips(cloud, r, 3));
        EXPECT_EQ(test::face_set(cech_complex(cloud, r, 3)), test::brute_force_cech(cloud, r, 3));
    }
}
