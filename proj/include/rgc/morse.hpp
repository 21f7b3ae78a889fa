#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rgc/complex.hpp"

namespace rgc {

/// Vertices sorted by (squared distance to origin, vertex index).
struct DistanceOrder {
    Eigen::VectorXd origin;
    std::vector<Vertex> permutation;   // permutation[rank] = vertex
    std::vector<std::uint32_t> rank;   // rank[vertex]
};

DistanceOrder distance_order(const PointCloud& cloud, const Eigen::VectorXd& origin);

Eigen::VectorXd centroid(const PointCloud& cloud);

/// Domain center for the ball density, centroid otherwise.
Eigen::VectorXd default_origin(const PointCloud& cloud);

/// Pairs the `face`-th face of dimension `dim` with face + {added}.
/// The coface may lie one dimension above the stored cap.
struct GradientPair {
    int dim = 0;
    std::size_t face = 0;
    Vertex added = 0;
};

struct DiscreteVectorField {
    std::vector<GradientPair> pairs;
    /// Vertex of minimum rank, when the field came from a distance order.
    std::optional<Vertex> nearest_vertex;
};

/// Pairs every face S with S + {x_a}, where a is the lowest-ranked common
/// neighbor of S ranked below every vertex of S. Rips complexes only.
DiscreteVectorField build_gradient_field(const SimplicialComplex& complex, const GeometricGraph& graph,
                                         const DistanceOrder& order);

struct ValidationReport {
    bool matching = true;
    bool acyclic = true;
    std::string message;
    /// Faces of a closed V-path, or the doubly used face on a matching failure.
    std::vector<std::vector<Vertex>> witness;

    bool ok() const { return matching && acyclic; }
};

ValidationReport validate_gradient_field(const SimplicialComplex& complex, const DiscreteVectorField& field);

struct CriticalCensus {
    std::vector<std::size_t> counts;       // C_0 .. C_{max_dim}
    bool nearest_vertex_critical = false;  // the nearest vertex is the only critical vertex
    std::size_t pairs = 0;
    std::size_t pairs_beyond_cap = 0;
    std::vector<std::size_t> paired_up;    // per dimension, faces matched with a coface
    std::vector<std::size_t> paired_down;  // per dimension, faces matched with a facet
};

CriticalCensus critical_cells(const SimplicialComplex& complex, const DiscreteVectorField& field);

}  // namespace rgc
