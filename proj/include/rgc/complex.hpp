#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rgc/geometry.hpp"

namespace rgc {

enum class ComplexType { Rips, Cech, Generic };

std::string_view complex_type_name(ComplexType type);
ComplexType parse_complex_type(std::string_view name);

/// Relative tolerance of the Cech ball test; radius <= (r/2)(1 + tol) is accepted.
inline constexpr double kCechRelTol = 1e-9;
inline constexpr std::size_t kDefaultFaceBudget = 50'000'000;

struct ComplexOptions {
    std::size_t max_faces = kDefaultFaceBudget;
};

/// Faces stored per dimension as flat, lexicographically sorted vertex tuples.
///
/// Dimensions above max_dim are never stored. `truncated()` records whether
/// the underlying complex has faces of dimension max_dim + 1 that were cut off.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    SimplicialComplex(std::size_t n_vertices, int max_dim, ComplexType type = ComplexType::Generic,
                      double radius = 0.0);

    /// Builds a complex from arbitrary faces (vertices need not be sorted).
    /// Throws std::invalid_argument if the set is not downward closed.
    static SimplicialComplex from_faces(std::size_t n_vertices, int max_dim,
                                        std::vector<std::vector<Vertex>> faces,
                                        ComplexType type = ComplexType::Generic, double radius = 0.0,
                                        bool truncated = false);

    std::size_t n_vertices() const { return n_vertices_; }
    int max_dim() const { return max_dim_; }
    ComplexType type() const { return type_; }
    double radius() const { return radius_; }
    bool truncated() const { return truncated_; }

    std::size_t num_faces(int k) const;
    std::size_t total_faces() const;
    /// f_0 .. f_{max_dim}
    std::vector<std::size_t> f_vector() const;

    std::span<const Vertex> face(int k, std::size_t i) const
    {
        const auto width = static_cast<std::size_t>(k + 1);
        return {faces_[static_cast<std::size_t>(k)].data() + i * width, width};
    }

    /// Index of a sorted face within its dimension, if stored.
    std::optional<std::size_t> find(std::span<const Vertex> face) const;
    bool contains(std::span<const Vertex> face) const { return find(face).has_value(); }

    /// Every stored face has all of its facets stored.
    bool is_downward_closed() const;

    // Builder interface, used by the constructions.
    void append_face(std::span<const Vertex> face);
    void set_truncated(bool value) { truncated_ = value; }

private:
    std::size_t n_vertices_ = 0;
    int max_dim_ = 0;
    ComplexType type_ = ComplexType::Generic;
    double radius_ = 0.0;
    bool truncated_ = false;
    std::vector<std::vector<Vertex>> faces_;  // faces_[k] holds f_k * (k+1) vertices
};

/// Clique complex of `graph` up to dimension max_dim.
SimplicialComplex rips_complex(const GeometricGraph& graph, int max_dim, const ComplexOptions& options = {});

/// Cech complex: sigma is a face iff its minimal enclosing ball has radius <= r/2.
SimplicialComplex cech_complex(const PointCloud& cloud, double r, int max_dim, const ComplexOptions& options = {});

/// Same, reusing an already built geometric graph at radius r.
SimplicialComplex cech_complex(const PointCloud& cloud, const GeometricGraph& graph, int max_dim,
                               const ComplexOptions& options = {});

/// Cech test for an arbitrary vertex set of the cloud.
bool cech_face_test(const PointCloud& cloud, std::span<const Vertex> face, double r);

}  // namespace rgc
