#include "rgc/census.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rgc {

namespace {

// Dense adjacency of a graph with at most kMaxPatternVertices vertices.
using SmallAdjacency = std::vector<std::vector<char>>;

constexpr int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }  // i < j

class Canonizer {
public:
    explicit Canonizer(const SmallAdjacency& adj) : adj_(adj), n_(static_cast<int>(adj.size()))
    {
        degree_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v)
            degree_[static_cast<std::size_t>(v)] =
                static_cast<int>(std::count(adj_[static_cast<std::size_t>(v)].begin(),
                                            adj_[static_cast<std::size_t>(v)].end(), 1));
        slot_degree_ = degree_;
        std::sort(slot_degree_.begin(), slot_degree_.end());
        assigned_.resize(static_cast<std::size_t>(n_));
        used_.assign(static_cast<std::size_t>(n_), 0);
    }

    CanonicalForm run()
    {
        best_ = 0;
        have_best_ = false;
        search(0, 0);
        return {n_, best_};
    }

private:
    void search(int slot, std::uint64_t bits)
    {
        if (slot == n_) {
            if (!have_best_ || bits > best_) {
                best_ = bits;
                have_best_ = true;
            }
            return;
        }
        for (int v = 0; v < n_; ++v) {
            if (used_[static_cast<std::size_t>(v)] || degree_[static_cast<std::size_t>(v)] != slot_degree_[static_cast<std::size_t>(slot)])
                continue;
            std::uint64_t next = bits;
            for (int i = 0; i < slot; ++i)
                if (adj_[static_cast<std::size_t>(assigned_[static_cast<std::size_t>(i)])][static_cast<std::size_t>(v)])
                    next |= std::uint64_t{1} << (63 - pair_index(i, slot));
            // Bits of pairs within the first slot+1 slots are final; prune if
            // that prefix already loses.
            const int fixed = pair_index(0, slot + 1);
            if (have_best_ && fixed > 0) {
                const std::uint64_t mask = fixed >= 64 ? ~0ULL : ~((~0ULL) >> fixed);
                if ((next & mask) < (best_ & mask)) continue;
            }
            used_[static_cast<std::size_t>(v)] = 1;
            assigned_[static_cast<std::size_t>(slot)] = v;
            search(slot + 1, next);
            used_[static_cast<std::size_t>(v)] = 0;
        }
    }

    const SmallAdjacency& adj_;
    int n_;
    std::vector<int> degree_;
    std::vector<int> slot_degree_;
    std::vector<int> assigned_;
    std::vector<char> used_;
    std::uint64_t best_ = 0;
    bool have_best_ = false;
};

CanonicalForm canonical_form(const SmallAdjacency& adj)
{
    if (adj.size() > static_cast<std::size_t>(kMaxPatternVertices))
        throw std::invalid_argument("canonical form supports at most " + std::to_string(kMaxPatternVertices) +
                                    " vertices");
    return Canonizer(adj).run();
}

SmallAdjacency induced_adjacency(const GeometricGraph& graph, std::span<const Vertex> vertices)
{
    SmallAdjacency adj(vertices.size(), std::vector<char>(vertices.size(), 0));
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (graph.adjacent(vertices[a], vertices[b])) adj[a][b] = adj[b][a] = 1;
    return adj;
}

std::size_t induced_edge_count(const GeometricGraph& graph, std::span<const Vertex> vertices)
{
    std::size_t e = 0;
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (graph.adjacent(vertices[a], vertices[b])) ++e;
    return e;
}

}  // namespace

ComponentPartition connected_components(const GeometricGraph& graph)
{
    const auto n = graph.size();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v : graph.neighbors(u)) {
            const auto a = find(u), b = find(v);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }

    ComponentPartition partition;
    partition.component_of.assign(n, 0);
    constexpr std::uint32_t kUnset = ~0U;
    std::vector<std::uint32_t> id_of_root(n, kUnset);
    for (Vertex v = 0; v < n; ++v) {
        const auto root = find(v);
        if (id_of_root[root] == kUnset) {
            id_of_root[root] = static_cast<std::uint32_t>(partition.members.size());
            partition.members.emplace_back();
        }
        partition.component_of[v] = id_of_root[root];
        partition.members[id_of_root[root]].push_back(v);
    }
    return partition;
}

PatternGraph::PatternGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n), edges_(std::move(edges))
{
    if (n < 1 || n > kMaxPatternVertices)
        throw std::invalid_argument("pattern must have between 1 and " + std::to_string(kMaxPatternVertices) +
                                    " vertices");
    SmallAdjacency adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto& [a, b] : edges_) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("invalid pattern edge");
        if (a > b) std::swap(a, b);
        adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
        adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    canonical_ = canonical_form(adj);
}

bool PatternGraph::connected() const
{
    std::vector<int> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };
    int merges = 0;
    for (auto [a, b] : edges_) {
        const int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[static_cast<std::size_t>(ra)] = rb;
            ++merges;
        }
    }
    return merges == n_ - 1;
}

PatternGraph PatternGraph::path(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return PatternGraph(n, std::move(e));
}

PatternGraph PatternGraph::complete(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return PatternGraph(n, std::move(e));
}

PatternGraph PatternGraph::star(int leaves)
{
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return PatternGraph(leaves + 1, std::move(e));
}

CanonicalForm induced_canonical_form(const GeometricGraph& graph, std::span<const Vertex> vertices)
{
    return canonical_form(induced_adjacency(graph, vertices));
}

ComponentClass classify_component(const GeometricGraph& graph, std::span<const Vertex> component)
{
    ComponentClass out;
    const auto s = component.size();
    if (s == 0) return out;
    std::size_t degree_sum = 0;
    bool all_full = true, all_one_missing = true;
    for (Vertex v : component) {
        const auto deg = graph.degree(v);
        degree_sum += deg;
        all_full = all_full && deg == s - 1;
        all_one_missing = all_one_missing && deg + 2 == s;
    }
    // Inside a component every vertex has exactly one non-neighbor, so the
    // complement is a perfect matching: the complete multipartite graph with
    // parts of size 2.
    if (s >= 4 && s % 2 == 0 && all_one_missing) {
        out.kind = ComponentKind::CrossPolytopeSkeleton;
        out.dim = static_cast<int>(s / 2) - 1;
        return out;
    }
    if (all_full) {
        out.kind = ComponentKind::Simplex;
        out.dim = static_cast<int>(s) - 1;
        return out;
    }
    if (degree_sum / 2 == s - 1) {
        out.kind = ComponentKind::Tree;
        return out;
    }
    out.kind = ComponentKind::Other;
    if (s <= static_cast<std::size_t>(kMaxPatternVertices)) out.canonical = induced_canonical_form(graph, component);
    return out;
}

std::size_t crosspolytope_component_count(const GeometricGraph& graph, const ComponentPartition& partition, int k)
{
    std::size_t count = 0;
    for (const auto& members : partition.members) {
        if (members.size() != static_cast<std::size_t>(2 * k + 2)) continue;
        const auto cls = classify_component(graph, members);
        if (cls.kind == ComponentKind::CrossPolytopeSkeleton && cls.dim == k) ++count;
    }
    return count;
}

std::size_t empty_simplex_count(const PointCloud& cloud, const GeometricGraph& graph,
                                const ComponentPartition& partition, double r, int k)
{
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    if (k < 1) return 0;
    const auto size = static_cast<std::size_t>(k + 2);
    std::size_t count = 0;
    std::vector<Vertex> sub;
    for (const auto& members : partition.members) {
        if (members.size() != size) continue;
        if (induced_edge_count(graph, members) != size * (size - 1) / 2) continue;
        bool boundary = true;
        for (std::size_t drop = 0; drop < size && boundary; ++drop) {
            sub.clear();
            for (std::size_t i = 0; i < size; ++i)
                if (i != drop) sub.push_back(members[i]);
            boundary = cech_face_test(cloud, sub, r);
        }
        if (boundary && !cech_face_test(cloud, members, r)) ++count;
    }
    return count;
}

std::size_t FaceComponentCounts::eq(int k, std::size_t i) const
{
    if (k < 0 || static_cast<std::size_t>(k) >= exact.size()) return 0;
    const auto& m = exact[static_cast<std::size_t>(k)];
    const auto it = m.find(i);
    return it == m.end() ? 0 : it->second;
}

std::size_t FaceComponentCounts::ge(int k, std::size_t i) const
{
    if (k < 0 || static_cast<std::size_t>(k) >= exact.size()) return 0;
    std::size_t total = 0;
    const auto& m = exact[static_cast<std::size_t>(k)];
    for (auto it = m.lower_bound(i); it != m.end(); ++it) total += it->second;
    return total;
}

FaceComponentCounts face_component_counts(const SimplicialComplex& complex, const ComponentPartition& partition)
{
    if (partition.component_of.size() != complex.n_vertices())
        throw std::invalid_argument("partition does not match the complex's vertex set");
    FaceComponentCounts out;
    out.exact.resize(static_cast<std::size_t>(complex.max_dim()) + 1);
    for (int k = 0; k <= complex.max_dim(); ++k) {
        auto& m = out.exact[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < complex.num_faces(k); ++i) {
            const auto c = partition.component_of[complex.face(k, i)[0]];
            ++m[partition.members[c].size()];
        }
    }
    return out;
}

std::size_t component_iso_count(const GeometricGraph& graph, const ComponentPartition& partition,
                                const PatternGraph& pattern)
{
    std::size_t count = 0;
    const auto s = static_cast<std::size_t>(pattern.size());
    for (const auto& members : partition.members) {
        if (members.size() != s) continue;
        if (induced_edge_count(graph, members) != pattern.edges().size()) continue;
        if (induced_canonical_form(graph, members) == pattern.canonical()) ++count;
    }
    return count;
}

namespace {

// Enumerates each connected vertex set of the target size exactly once
// (extension sets restricted to exclusive neighbors larger than the root).
class ConnectedSubsets {
public:
    ConnectedSubsets(const GeometricGraph& graph, const PatternGraph& pattern, std::size_t budget)
        : graph_(graph), pattern_(pattern), size_(static_cast<std::size_t>(pattern.size())), budget_(budget)
    {
    }

    std::size_t run()
    {
        in_sub_or_nbr_.assign(graph_.size(), 0);
        for (Vertex v = 0; v < graph_.size(); ++v) {
            root_ = v;
            sub_.assign(1, v);
            std::vector<Vertex> ext;
            for (Vertex u : graph_.neighbors(v))
                if (u > v) ext.push_back(u);
            mark(v, +1);
            extend(ext);
            mark(v, -1);
        }
        return matches_;
    }

private:
    // Reference counts of membership in sub_ or its neighborhood.
    void mark(Vertex v, int delta)
    {
        in_sub_or_nbr_[v] += delta;
        for (Vertex u : graph_.neighbors(v)) in_sub_or_nbr_[u] += delta;
    }

    void extend(std::vector<Vertex> ext)
    {
        if (sub_.size() == size_) {
            if (++visited_ > budget_)
                throw ResourceError("subset budget of " + std::to_string(budget_) + " exceeded");
            if (induced_edge_count(graph_, sub_) == pattern_.edges().size() &&
                induced_canonical_form(graph_, sub_) == pattern_.canonical())
                ++matches_;
            return;
        }
        while (!ext.empty()) {
            const Vertex w = ext.back();
            ext.pop_back();
            std::vector<Vertex> next = ext;
            for (Vertex u : graph_.neighbors(w))
                if (u > root_ && in_sub_or_nbr_[u] == 0) next.push_back(u);
            sub_.push_back(w);
            mark(w, +1);
            extend(std::move(next));
            mark(w, -1);
            sub_.pop_back();
        }
    }

    const GeometricGraph& graph_;
    const PatternGraph& pattern_;
    std::size_t size_;
    std::size_t budget_;
    Vertex root_ = 0;
    std::vector<Vertex> sub_;
    std::vector<int> in_sub_or_nbr_;
    std::size_t visited_ = 0;
    std::size_t matches_ = 0;
};

}  // namespace

std::size_t induced_subgraph_count(const GeometricGraph& graph, const PatternGraph& pattern, std::size_t subset_budget)
{
    if (pattern.size() > 7) throw std::invalid_argument("induced_subgraph_count supports patterns up to 7 vertices");
    if (!pattern.connected()) throw std::invalid_argument("induced_subgraph_count requires a connected pattern");
    if (pattern.size() == 1) return graph.size();
    return ConnectedSubsets(graph, pattern, subset_budget).run();
}

CensusReport census_report(const SimplicialComplex& complex, const GeometricGraph& graph, int k_max,
                           const PointCloud* cloud)
{
    CensusReport report;
    const auto partition = connected_components(graph);
    report.components = partition.count();
    for (const auto& m : partition.members) ++report.component_sizes[m.size()];
    report.faces = face_component_counts(complex, partition);
    for (int k = 1; k <= k_max; ++k) {
        if (complex.type() != ComplexType::Cech) report.o_tilde[k] = crosspolytope_component_count(graph, partition, k);
        if (complex.type() == ComplexType::Cech && cloud)
            report.s_tilde[k] = empty_simplex_count(*cloud, graph, partition, graph.radius(), k);
    }
    return report;
}

}  // namespace rgc
