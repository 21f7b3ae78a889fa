#include "rgc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

namespace rgc {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// The standard distributions are implementation-defined, so the transforms
// from raw 64-bit output are spelled out here to keep files portable.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Box-Muller; caches the second variate.
    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct CellHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const
    {
        std::uint64_t h = 0x51ed270b27a1f3c5ULL;
        for (auto c : key) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

std::string_view density_name(DensityKind kind)
{
    switch (kind) {
    case DensityKind::UniformCube: return "cube";
    case DensityKind::UniformBall: return "ball";
    case DensityKind::Gaussian: return "gaussian";
    }
    return "cube";
}

DensityKind parse_density(std::string_view name)
{
    if (name == "cube") return DensityKind::UniformCube;
    if (name == "ball") return DensityKind::UniformBall;
    if (name == "gaussian") return DensityKind::Gaussian;
    throw std::invalid_argument("unknown density '" + std::string(name) + "'");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b)
{
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

PointCloud make_cloud(Eigen::MatrixXd points, Density density)
{
    if (points.rows() < 1) throw std::invalid_argument("point dimension must be >= 1");
    if (!points.allFinite()) throw std::invalid_argument("point coordinates must be finite");
    density.dim = static_cast<int>(points.rows());
    PointCloud cloud;
    cloud.points = std::move(points);
    cloud.density = density;
    return cloud;
}

PointCloud sample_points(const Density& density, std::size_t n, std::uint64_t seed)
{
    if (density.dim < 1) throw std::invalid_argument("density dimension must be >= 1");
    const int d = density.dim;
    PointCloud cloud;
    cloud.seed = seed;
    cloud.density = density;
    cloud.points.resize(d, static_cast<Eigen::Index>(n));

    Sampler rng(seed);
    for (Eigen::Index i = 0; i < cloud.points.cols(); ++i) {
        auto x = cloud.points.col(i);
        switch (density.kind) {
        case DensityKind::UniformCube:
            for (int c = 0; c < d; ++c) x(c) = rng.uniform();
            break;
        case DensityKind::Gaussian:
            for (int c = 0; c < d; ++c) x(c) = rng.normal();
            break;
        case DensityKind::UniformBall: {
            // Gaussian direction scaled by U^{1/d}; no rejection.
            double norm2 = 0.0;
            do {
                for (int c = 0; c < d; ++c) x(c) = rng.normal();
                norm2 = x.squaredNorm();
            } while (norm2 == 0.0);
            const double radius = std::pow(rng.uniform(), 1.0 / d);
            x *= radius / std::sqrt(norm2);
            // Rounding can leave |x| a hair above 1.
            if (x.squaredNorm() > 1.0) x /= x.norm() * (1.0 + 0x1.0p-52);
            break;
        }
        }
    }
    return cloud;
}

GeometricGraph::GeometricGraph(double radius, std::vector<std::vector<Vertex>> adjacency)
    : radius_(radius), adjacency_(std::move(adjacency))
{
    std::size_t total = 0;
    for (auto& nbrs : adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        total += nbrs.size();
    }
    num_edges_ = total / 2;
}

bool GeometricGraph::adjacent(Vertex u, Vertex v) const
{
    const auto& a = adjacency_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> GeometricGraph::edges() const
{
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < adjacency_.size(); ++u)
        for (Vertex v : adjacency_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

GeometricGraph build_geometric_graph(const PointCloud& cloud, double r)
{
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radius must be positive and finite");
    const int d = cloud.dim();
    const std::size_t n = cloud.size();
    const double r2 = r * r;

    using Key = std::vector<std::int64_t>;
    std::unordered_map<Key, std::vector<Vertex>, CellHash> cells;
    std::vector<Key> keys(n, Key(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < d; ++c)
            keys[i][c] = static_cast<std::int64_t>(std::floor(cloud.points(c, static_cast<Eigen::Index>(i)) / r));
        cells[keys[i]].push_back(static_cast<Vertex>(i));
    }

    // Offsets in {-1,0,1}^d; each unordered pair is found from both ends.
    std::vector<std::vector<Vertex>> adjacency(n);
    Key probe(d);
    std::vector<int> offset(d, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = cloud.point(i);
        std::fill(offset.begin(), offset.end(), -1);
        while (true) {
            for (int c = 0; c < d; ++c) probe[c] = keys[i][c] + offset[c];
            if (auto it = cells.find(probe); it != cells.end()) {
                for (Vertex j : it->second) {
                    if (j == i) continue;
                    if ((cloud.point(j) - xi).squaredNorm() <= r2) adjacency[i].push_back(j);
                }
            }
            int c = 0;
            while (c < d && offset[c] == 1) offset[c++] = -1;
            if (c == d) break;
            ++offset[c];
        }
    }
    return GeometricGraph(r, std::move(adjacency));
}

GeometricGraph graph_from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                                double radius)
{
    std::vector<std::vector<Vertex>> adjacency(n);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n || u == v) throw std::invalid_argument("invalid edge");
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }
    for (auto& nbrs : adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return GeometricGraph(radius, std::move(adjacency));
}

}  // namespace rgc
