#include "rgc/complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rgc/meb.hpp"

namespace rgc {

std::string_view complex_type_name(ComplexType type)
{
    switch (type) {
    case ComplexType::Rips: return "rips";
    case ComplexType::Cech: return "cech";
    case ComplexType::Generic: return "generic";
    }
    return "generic";
}

ComplexType parse_complex_type(std::string_view name)
{
    if (name == "rips") return ComplexType::Rips;
    if (name == "cech") return ComplexType::Cech;
    if (name == "generic") return ComplexType::Generic;
    throw std::invalid_argument("unknown complex type '" + std::string(name) + "'");
}

SimplicialComplex::SimplicialComplex(std::size_t n_vertices, int max_dim, ComplexType type, double radius)
    : n_vertices_(n_vertices), max_dim_(max_dim), type_(type), radius_(radius)
{
    if (max_dim < 0) throw std::invalid_argument("max_dim must be >= 0");
    faces_.resize(static_cast<std::size_t>(max_dim) + 1);
}

SimplicialComplex SimplicialComplex::from_faces(std::size_t n_vertices, int max_dim,
                                                std::vector<std::vector<Vertex>> faces, ComplexType type,
                                                double radius, bool truncated)
{
    SimplicialComplex cx(n_vertices, max_dim, type, radius);
    cx.truncated_ = truncated;
    for (auto& f : faces) {
        if (f.empty()) throw std::invalid_argument("empty face");
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end())
            throw std::invalid_argument("face has repeated vertices");
        if (f.back() >= n_vertices) throw std::invalid_argument("face vertex out of range");
        if (static_cast<int>(f.size()) - 1 > max_dim) throw std::invalid_argument("face exceeds max_dim");
    }
    std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    for (const auto& f : faces) cx.append_face(f);
    if (!cx.is_downward_closed()) throw std::invalid_argument("face set is not downward closed");
    return cx;
}

std::size_t SimplicialComplex::num_faces(int k) const
{
    if (k < 0 || k > max_dim_) return 0;
    return faces_[static_cast<std::size_t>(k)].size() / static_cast<std::size_t>(k + 1);
}

std::size_t SimplicialComplex::total_faces() const
{
    std::size_t total = 0;
    for (int k = 0; k <= max_dim_; ++k) total += num_faces(k);
    return total;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (int k = 0; k <= max_dim_; ++k) f.push_back(num_faces(k));
    return f;
}

std::optional<std::size_t> SimplicialComplex::find(std::span<const Vertex> face) const
{
    const int k = static_cast<int>(face.size()) - 1;
    if (k < 0 || k > max_dim_) return std::nullopt;
    std::size_t lo = 0, hi = num_faces(k);
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const auto candidate = this->face(k, mid);
        if (std::lexicographical_compare(candidate.begin(), candidate.end(), face.begin(), face.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < num_faces(k) && std::ranges::equal(this->face(k, lo), face)) return lo;
    return std::nullopt;
}

bool SimplicialComplex::is_downward_closed() const
{
    std::vector<Vertex> facet;
    for (int k = 1; k <= max_dim_; ++k) {
        for (std::size_t i = 0; i < num_faces(k); ++i) {
            const auto f = face(k, i);
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                facet.clear();
                for (std::size_t j = 0; j < f.size(); ++j)
                    if (j != drop) facet.push_back(f[j]);
                if (!contains(facet)) return false;
            }
        }
    }
    return true;
}

void SimplicialComplex::append_face(std::span<const Vertex> face)
{
    const auto k = face.size() - 1;
    faces_[k].insert(faces_[k].end(), face.begin(), face.end());
}

namespace {

// Incremental clique expansion. Each face is extended only by common
// neighbors larger than its maximum vertex, so every clique is produced once
// and each dimension comes out in lexicographic order.
template <typename Accept>
class CliqueExpander {
public:
    CliqueExpander(const GeometricGraph& graph, SimplicialComplex& out, std::size_t budget, Accept accept)
        : graph_(graph), out_(out), budget_(budget), accept_(accept)
    {
    }

    void run()
    {
        const int max_dim = out_.max_dim();
        std::vector<Vertex> face(1);
        for (Vertex v = 0; v < graph_.size(); ++v) {
            face[0] = v;
            emit(face);
        }
        if (max_dim == 0) {
            out_.set_truncated(graph_.num_edges() > 0);
            return;
        }
        std::vector<Vertex> candidates;
        for (Vertex v = 0; v < graph_.size(); ++v) {
            const auto nbrs = graph_.neighbors(v);
            candidates.assign(std::upper_bound(nbrs.begin(), nbrs.end(), v), nbrs.end());
            face.assign(1, v);
            expand(face, candidates);
        }
        out_.set_truncated(truncated_);
    }

private:
    void emit(std::span<const Vertex> face)
    {
        if (++count_ > budget_)
            throw ResourceError("face budget of " + std::to_string(budget_) + " faces exceeded");
        out_.append_face(face);
    }

    void expand(std::vector<Vertex>& face, const std::vector<Vertex>& candidates)
    {
        const int dim = static_cast<int>(face.size()) - 1;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const Vertex c = candidates[i];
            face.push_back(c);
            if (dim + 1 >= 2 && !accept_(std::span<const Vertex>(face))) {
                face.pop_back();
                continue;
            }
            if (dim + 1 > out_.max_dim()) {
                truncated_ = true;
                face.pop_back();
                // One witness is enough to know the complex continues.
                return;
            }
            emit(face);
            if (dim + 1 < out_.max_dim() || !truncated_) {
                std::vector<Vertex> next;
                const auto nbrs = graph_.neighbors(c);
                std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(),
                                      nbrs.begin(), nbrs.end(), std::back_inserter(next));
                if (!next.empty()) expand(face, next);
            }
            face.pop_back();
        }
    }

    const GeometricGraph& graph_;
    SimplicialComplex& out_;
    std::size_t budget_;
    Accept accept_;
    std::size_t count_ = 0;
    bool truncated_ = false;
};

}  // namespace

SimplicialComplex rips_complex(const GeometricGraph& graph, int max_dim, const ComplexOptions& options)
{
    SimplicialComplex cx(graph.size(), max_dim, ComplexType::Rips, graph.radius());
    auto accept_all = [](std::span<const Vertex>) { return true; };
    CliqueExpander(graph, cx, options.max_faces, accept_all).run();
    return cx;
}

bool cech_face_test(const PointCloud& cloud, std::span<const Vertex> face, double r)
{
    Eigen::MatrixXd pts(cloud.dim(), static_cast<Eigen::Index>(face.size()));
    for (std::size_t j = 0; j < face.size(); ++j) pts.col(static_cast<Eigen::Index>(j)) = cloud.point(face[j]);
    return min_enclosing_ball(pts).radius <= 0.5 * r * (1.0 + kCechRelTol);
}

SimplicialComplex cech_complex(const PointCloud& cloud, const GeometricGraph& graph, int max_dim,
                               const ComplexOptions& options)
{
    if (graph.size() != cloud.size()) throw std::invalid_argument("graph and cloud sizes differ");
    const double r = graph.radius();
    SimplicialComplex cx(graph.size(), max_dim, ComplexType::Cech, r);
    // Cech faces are a downward-closed subset of the cliques, so a failing
    // face prunes its whole subtree.
    auto ball_test = [&](std::span<const Vertex> face) { return cech_face_test(cloud, face, r); };
    CliqueExpander(graph, cx, options.max_faces, ball_test).run();
    return cx;
}

SimplicialComplex cech_complex(const PointCloud& cloud, double r, int max_dim, const ComplexOptions& options)
{
    return cech_complex(cloud, build_geometric_graph(cloud, r), max_dim, options);
}

}  // namespace rgc
