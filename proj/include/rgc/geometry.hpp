#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rgc {

using Vertex = std::uint32_t;

/// Thrown when an enumeration or elimination would exceed its configured budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DensityKind { UniformCube, UniformBall, Gaussian };

struct Density {
    DensityKind kind = DensityKind::UniformCube;
    int dim = 2;

    bool bounded() const { return kind != DensityKind::Gaussian; }
    friend bool operator==(const Density&, const Density&) = default;
};

/// Short names used by files and the CLI: cube, ball, gaussian.
std::string_view density_name(DensityKind kind);
DensityKind parse_density(std::string_view name);

/// Name of the generator used by sample_points, recorded in output metadata.
inline constexpr std::string_view kRngName = "mt19937_64+splitmix64/v1";

/// Points are stored column-wise: points.col(i) is the i-th sample.
struct PointCloud {
    Eigen::MatrixXd points;
    std::uint64_t seed = 0;
    Density density;

    int dim() const { return static_cast<int>(points.rows()); }
    std::size_t size() const { return static_cast<std::size_t>(points.cols()); }
    auto point(std::size_t i) const { return points.col(static_cast<Eigen::Index>(i)); }
};

/// Wraps explicit coordinates (columns are points) as a cloud with no sampling history.
PointCloud make_cloud(Eigen::MatrixXd points, Density density = {});

/// n i.i.d. samples from `density`; bit-identical for identical (density, n, seed).
PointCloud sample_points(const Density& density, std::size_t n, std::uint64_t seed);

/// 64-bit mix of several values into one seed (splitmix64 finalizer chain).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

class GeometricGraph {
public:
    GeometricGraph() = default;
    GeometricGraph(double radius, std::vector<std::vector<Vertex>> adjacency);

    std::size_t size() const { return adjacency_.size(); }
    double radius() const { return radius_; }
    std::size_t num_edges() const { return num_edges_; }

    /// Neighbors of v in increasing index order.
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
    bool adjacent(Vertex u, Vertex v) const;

    /// Edge list as (i, j) with i < j, lexicographically sorted.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

private:
    double radius_ = 0.0;
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t num_edges_ = 0;
};

/// Edges {i,j} with |x_i - x_j| <= r, found through a uniform grid of cell side r.
GeometricGraph build_geometric_graph(const PointCloud& cloud, double r);

/// Graph from an explicit edge list (for combinatorial inputs and tests).
GeometricGraph graph_from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                                double radius = 0.0);

}  // namespace rgc
