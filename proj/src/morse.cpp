#include "rgc/morse.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rgc {

namespace {

std::vector<Vertex> with_vertex(std::span<const Vertex> face, Vertex added)
{
    std::vector<Vertex> out(face.begin(), face.end());
    out.insert(std::upper_bound(out.begin(), out.end(), added), added);
    return out;
}

std::string format_face(std::span<const Vertex> face)
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < face.size(); ++i) os << (i ? "," : "") << face[i];
    os << '}';
    return os.str();
}

}  // namespace

DistanceOrder distance_order(const PointCloud& cloud, const Eigen::VectorXd& origin)
{
    if (origin.size() != cloud.dim()) throw std::invalid_argument("origin dimension does not match cloud");
    const auto n = cloud.size();
    std::vector<double> dist2(n);
    for (std::size_t i = 0; i < n; ++i) dist2[i] = (cloud.point(i) - origin).squaredNorm();

    DistanceOrder order;
    order.origin = origin;
    order.permutation.resize(n);
    std::iota(order.permutation.begin(), order.permutation.end(), Vertex{0});
    std::stable_sort(order.permutation.begin(), order.permutation.end(),
                     [&](Vertex a, Vertex b) { return dist2[a] < dist2[b]; });
    order.rank.resize(n);
    for (std::size_t r = 0; r < n; ++r) order.rank[order.permutation[r]] = static_cast<std::uint32_t>(r);
    return order;
}

Eigen::VectorXd centroid(const PointCloud& cloud)
{
    if (cloud.size() == 0) return Eigen::VectorXd::Zero(cloud.dim());
    return cloud.points.rowwise().mean();
}

Eigen::VectorXd default_origin(const PointCloud& cloud)
{
    if (cloud.density.kind == DensityKind::UniformBall) return Eigen::VectorXd::Zero(cloud.dim());
    return centroid(cloud);
}

DiscreteVectorField build_gradient_field(const SimplicialComplex& complex, const GeometricGraph& graph,
                                         const DistanceOrder& order)
{
    if (complex.type() == ComplexType::Cech)
        throw std::invalid_argument("gradient field is defined for Vietoris-Rips complexes only");
    const auto n = complex.n_vertices();
    if (graph.size() != n || order.permutation.size() != n)
        throw std::invalid_argument("graph, order and complex have different vertex counts");
    if (complex.max_dim() >= 1) {
        if (complex.num_faces(1) != graph.num_edges())
            throw std::invalid_argument("complex edges disagree with the adjacency source");
        for (std::size_t i = 0; i < complex.num_faces(1); ++i) {
            const auto e = complex.face(1, i);
            if (!graph.adjacent(e[0], e[1]))
                throw std::invalid_argument("complex edge " + format_face(e) + " is not a graph edge");
        }
    }

    // Neighbor ranks in increasing order, for the upward scan.
    std::vector<std::vector<std::uint32_t>> neighbor_ranks(n);
    for (Vertex v = 0; v < n; ++v) {
        auto& nr = neighbor_ranks[v];
        for (Vertex u : graph.neighbors(v)) nr.push_back(order.rank[u]);
        std::sort(nr.begin(), nr.end());
    }

    DiscreteVectorField field;
    if (n > 0) field.nearest_vertex = order.permutation.front();

    for (int k = 0; k <= complex.max_dim(); ++k) {
        for (std::size_t i = 0; i < complex.num_faces(k); ++i) {
            const auto face = complex.face(k, i);
            std::uint32_t lowest = order.rank[face[0]];
            Vertex pivot = face[0];
            for (Vertex v : face) {
                lowest = std::min(lowest, order.rank[v]);
                if (graph.degree(v) < graph.degree(pivot)) pivot = v;
            }
            for (std::uint32_t a : neighbor_ranks[pivot]) {
                if (a >= lowest) break;
                const Vertex candidate = order.permutation[a];
                const bool common = std::ranges::all_of(
                    face, [&](Vertex v) { return v == pivot || graph.adjacent(candidate, v); });
                if (common) {
                    field.pairs.push_back({k, i, candidate});
                    break;
                }
            }
        }
    }
    return field;
}

ValidationReport validate_gradient_field(const SimplicialComplex& complex, const DiscreteVectorField& field)
{
    ValidationReport report;
    const int top = complex.max_dim();
    std::vector<std::vector<std::int64_t>> up(static_cast<std::size_t>(top) + 1);
    std::vector<std::vector<char>> used(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) {
        up[static_cast<std::size_t>(k)].assign(complex.num_faces(k), -1);
        used[static_cast<std::size_t>(k)].assign(complex.num_faces(k), 0);
    }
    std::vector<std::vector<Vertex>> beyond;

    auto fail_matching = [&](std::string msg, std::span<const Vertex> witness) {
        if (!report.matching) return;
        report.matching = false;
        report.message = std::move(msg);
        report.witness = {std::vector<Vertex>(witness.begin(), witness.end())};
    };
    auto mark = [&](int k, std::size_t idx) {
        auto& u = used[static_cast<std::size_t>(k)][idx];
        if (u) fail_matching("face " + format_face(complex.face(k, idx)) + " appears in more than one pair",
                             complex.face(k, idx));
        u = 1;
    };

    for (std::size_t p = 0; p < field.pairs.size(); ++p) {
        const auto& pair = field.pairs[p];
        if (pair.dim < 0 || pair.dim > top || pair.face >= complex.num_faces(pair.dim)) {
            fail_matching("pair " + std::to_string(p) + " refers to a face that is not stored", {});
            continue;
        }
        const auto lower = complex.face(pair.dim, pair.face);
        if (std::ranges::find(lower, pair.added) != lower.end()) {
            fail_matching("pair " + std::to_string(p) + " adds a vertex already in the face", lower);
            continue;
        }
        const auto upper = with_vertex(lower, pair.added);
        mark(pair.dim, pair.face);
        up[static_cast<std::size_t>(pair.dim)][pair.face] = static_cast<std::int64_t>(p);
        if (pair.dim + 1 <= top) {
            const auto idx = complex.find(upper);
            if (!idx) {
                fail_matching("coface " + format_face(upper) + " is not in the complex", upper);
                continue;
            }
            mark(pair.dim + 1, *idx);
        } else {
            for (std::size_t drop = 0; drop < upper.size(); ++drop) {
                auto facet = upper;
                facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
                if (!complex.contains(facet)) {
                    fail_matching("coface " + format_face(upper) + " has a facet outside the complex", upper);
                    break;
                }
            }
            beyond.push_back(upper);
        }
    }
    std::sort(beyond.begin(), beyond.end());
    if (auto dup = std::adjacent_find(beyond.begin(), beyond.end()); dup != beyond.end())
        fail_matching("face " + format_face(*dup) + " appears in more than one pair", *dup);
    if (!report.matching) return report;

    // V-paths in dimension k: sigma -> facets of V(sigma) other than sigma,
    // continuing while the facet is itself paired upward.
    for (int k = 0; k <= top && report.acyclic; ++k) {
        const auto& upk = up[static_cast<std::size_t>(k)];
        const auto nk = complex.num_faces(k);
        std::vector<char> color(nk, 0);  // 0 new, 1 on stack, 2 done
        auto successors = [&](std::size_t s) {
            std::vector<std::size_t> out;
            const auto& pair = field.pairs[static_cast<std::size_t>(upk[s])];
            const auto upper = with_vertex(complex.face(k, s), pair.added);
            for (std::size_t drop = 0; drop < upper.size(); ++drop) {
                auto facet = upper;
                facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
                const auto idx = complex.find(facet);
                if (idx && *idx != s && upk[*idx] >= 0) out.push_back(*idx);
            }
            return out;
        };
        struct Frame {
            std::size_t node;
            std::vector<std::size_t> next;
            std::size_t pos;
        };
        for (std::size_t start = 0; start < nk && report.acyclic; ++start) {
            if (upk[start] < 0 || color[start] != 0) continue;
            std::vector<Frame> stack;
            stack.push_back({start, successors(start), 0});
            color[start] = 1;
            while (!stack.empty() && report.acyclic) {
                auto& top_frame = stack.back();
                if (top_frame.pos == top_frame.next.size()) {
                    color[top_frame.node] = 2;
                    stack.pop_back();
                    continue;
                }
                const auto nxt = top_frame.next[top_frame.pos++];
                if (color[nxt] == 1) {
                    report.acyclic = false;
                    report.message = "closed V-path in dimension " + std::to_string(k);
                    auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) { return f.node == nxt; });
                    for (; it != stack.end(); ++it) {
                        const auto f = complex.face(k, it->node);
                        report.witness.emplace_back(f.begin(), f.end());
                    }
                    const auto f = complex.face(k, nxt);
                    report.witness.emplace_back(f.begin(), f.end());
                } else if (color[nxt] == 0) {
                    color[nxt] = 1;
                    stack.push_back({nxt, successors(nxt), 0});
                }
            }
        }
    }
    return report;
}

CriticalCensus critical_cells(const SimplicialComplex& complex, const DiscreteVectorField& field)
{
    const int top = complex.max_dim();
    CriticalCensus census;
    census.paired_up.assign(static_cast<std::size_t>(top) + 1, 0);
    census.paired_down.assign(static_cast<std::size_t>(top) + 1, 0);
    std::vector<std::vector<char>> paired(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) paired[static_cast<std::size_t>(k)].assign(complex.num_faces(k), 0);

    for (const auto& pair : field.pairs) {
        ++census.pairs;
        paired[static_cast<std::size_t>(pair.dim)][pair.face] = 1;
        ++census.paired_up[static_cast<std::size_t>(pair.dim)];
        if (pair.dim + 1 > top) {
            ++census.pairs_beyond_cap;
            continue;
        }
        const auto idx = complex.find(with_vertex(complex.face(pair.dim, pair.face), pair.added));
        if (idx) {
            paired[static_cast<std::size_t>(pair.dim) + 1][*idx] = 1;
            ++census.paired_down[static_cast<std::size_t>(pair.dim) + 1];
        }
    }

    for (int k = 0; k <= top; ++k) {
        const auto& pk = paired[static_cast<std::size_t>(k)];
        census.counts.push_back(static_cast<std::size_t>(std::count(pk.begin(), pk.end(), 0)));
    }
    if (field.nearest_vertex && complex.num_faces(0) > 0 && census.counts[0] == 1) {
        const Vertex v = *field.nearest_vertex;
        const auto idx = complex.find(std::span<const Vertex>(&v, 1));
        census.nearest_vertex_critical = idx && !paired[0][*idx];
    }
    return census;
}

}  // namespace rgc
