#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rgc/complex.hpp"

namespace rgc {

struct ComponentPartition {
    std::vector<std::uint32_t> component_of;     // per vertex
    std::vector<std::vector<Vertex>> members;    // sorted, ordered by smallest vertex

    std::size_t count() const { return members.size(); }
};

ComponentPartition connected_components(const GeometricGraph& graph);

/// Canonical encoding of a small graph: the largest adjacency bit string over
/// all relabelings, with pairs (i<j) in colex order (0,1),(0,2),(1,2),(0,3)...
/// and bit 63 holding the first pair. Relabelings are restricted to
/// degree-sorted orders, which keeps the encoding invariant while cutting the
/// search.
struct CanonicalForm {
    int n = 0;
    std::uint64_t bits = 0;
    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

inline constexpr int kMaxPatternVertices = 10;

class PatternGraph {
public:
    PatternGraph(int n, std::vector<std::pair<int, int>> edges);

    int size() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool connected() const;
    const CanonicalForm& canonical() const { return canonical_; }

    static PatternGraph path(int n);
    static PatternGraph complete(int n);
    static PatternGraph star(int leaves);

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    CanonicalForm canonical_;
};

/// Canonical form of the subgraph induced by `vertices` (at most 10 of them).
CanonicalForm induced_canonical_form(const GeometricGraph& graph, std::span<const Vertex> vertices);

enum class ComponentKind { CrossPolytopeSkeleton, Simplex, Tree, Other };

struct ComponentClass {
    ComponentKind kind = ComponentKind::Other;
    int dim = 0;                             // k of O_k, or j of the j-simplex
    std::optional<CanonicalForm> canonical;  // for Other, when small enough
};

ComponentClass classify_component(const GeometricGraph& graph, std::span<const Vertex> component);

/// Number of components whose induced graph is the 1-skeleton of O_k.
std::size_t crosspolytope_component_count(const GeometricGraph& graph, const ComponentPartition& partition, int k);

/// Components of k+2 points whose (k+1)-subsets pass the Cech ball test at r
/// while the whole set fails it: boundaries of empty (k+1)-simplices.
std::size_t empty_simplex_count(const PointCloud& cloud, const GeometricGraph& graph,
                                const ComponentPartition& partition, double r, int k);

/// Counts of k-faces grouped by the vertex count of the component they lie on.
struct FaceComponentCounts {
    std::vector<std::map<std::size_t, std::size_t>> exact;  // exact[k][i] = f_k^{=i}

    std::size_t eq(int k, std::size_t i) const;
    std::size_t ge(int k, std::size_t i) const;  // f_k^{>=i}
};

FaceComponentCounts face_component_counts(const SimplicialComplex& complex, const ComponentPartition& partition);

std::size_t component_iso_count(const GeometricGraph& graph, const ComponentPartition& partition,
                                const PatternGraph& pattern);

inline constexpr std::size_t kDefaultSubsetBudget = 100'000'000;

/// Induced subgraphs isomorphic to a connected pattern of at most 7 vertices,
/// found by enumerating connected vertex subsets.
std::size_t induced_subgraph_count(const GeometricGraph& graph, const PatternGraph& pattern,
                                   std::size_t subset_budget = kDefaultSubsetBudget);

struct CensusReport {
    std::size_t components = 0;
    std::map<int, std::size_t> o_tilde;
    std::map<int, std::size_t> s_tilde;
    FaceComponentCounts faces;
    std::map<std::size_t, std::size_t> component_sizes;  // size -> number of components
};

/// Full census: o_tilde for k = 1..k_max (Rips), s_tilde for k = 1..k_max (Cech, needs the cloud).
CensusReport census_report(const SimplicialComplex& complex, const GeometricGraph& graph, int k_max,
                           const PointCloud* cloud = nullptr);

}  // namespace rgc
