#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace rgc {

/// Closed ball B(center, radius). An empty ball has radius < 0.
template <typename Scalar>
struct Ball {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> center;
    Scalar radius = Scalar(-1);

    template <typename Derived>
    bool contains(const Eigen::MatrixBase<Derived>& p, Scalar rel_tol = Scalar(1e-12)) const
    {
        if (radius < Scalar(0)) return false;
        const Scalar limit = radius * (Scalar(1) + rel_tol);
        return (p - center).squaredNorm() <= limit * limit;
    }
};

namespace detail {

// Smallest ball with every support point on its boundary: the circumcenter
// inside the affine hull of the support.
template <typename Derived>
Ball<typename Derived::Scalar> ball_from_support(const Eigen::MatrixBase<Derived>& pts,
                                                 const std::vector<Eigen::Index>& support)
{
    using Scalar = typename Derived::Scalar;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Ball<Scalar> ball;
    if (support.empty()) return ball;
    const Vec origin = pts.col(support[0]);
    ball.center = origin;
    ball.radius = Scalar(0);
    const auto m = static_cast<Eigen::Index>(support.size()) - 1;
    if (m == 0) return ball;

    Mat spokes(pts.rows(), m);
    for (Eigen::Index i = 0; i < m; ++i) spokes.col(i) = pts.col(support[i + 1]) - origin;
    const Mat gram = spokes.transpose() * spokes;
    const Vec rhs = Scalar(0.5) * gram.diagonal();
    const Vec coeffs = gram.completeOrthogonalDecomposition().solve(rhs);
    ball.center = origin + spokes * coeffs;
    for (auto idx : support)
        ball.radius = std::max(ball.radius, (pts.col(idx) - ball.center).norm());
    return ball;
}

// Move-to-front recursion: order[0, end) are the points still to be enclosed.
template <typename Derived>
Ball<typename Derived::Scalar> mtf_ball(const Eigen::MatrixBase<Derived>& pts, std::vector<Eigen::Index>& order,
                                        std::size_t end, std::vector<Eigen::Index>& support)
{
    auto ball = ball_from_support(pts, support);
    if (static_cast<Eigen::Index>(support.size()) == pts.rows() + 1) return ball;
    for (std::size_t i = 0; i < end; ++i) {
        const auto idx = order[i];
        if (ball.contains(pts.col(idx))) continue;
        support.push_back(idx);
        ball = mtf_ball(pts, order, i, support);
        support.pop_back();
        std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i),
                    order.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return ball;
}

}  // namespace detail

/// Smallest closed ball containing every column of `pts` (Welzl with move-to-front).
/// The returned radius is the exact max distance from the returned center.
template <typename Derived>
Ball<typename Derived::Scalar> min_enclosing_ball(const Eigen::MatrixBase<Derived>& pts)
{
    if (pts.cols() == 0) throw std::invalid_argument("min_enclosing_ball: empty point set");
    std::vector<Eigen::Index> order(static_cast<std::size_t>(pts.cols()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::vector<Eigen::Index> support;
    support.reserve(static_cast<std::size_t>(pts.rows()) + 1);
    auto ball = detail::mtf_ball(pts, order, order.size(), support);
    typename Derived::Scalar radius(0);
    for (Eigen::Index i = 0; i < pts.cols(); ++i) radius = std::max(radius, (pts.col(i) - ball.center).norm());
    ball.radius = radius;
    return ball;
}

/// Overload for a list of coordinate tuples; rejects mixed dimensions.
inline Ball<double> min_enclosing_ball(const std::vector<std::vector<double>>& points)
{
    if (points.empty()) throw std::invalid_argument("min_enclosing_ball: empty point set");
    const auto d = points.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].size() != d) throw std::invalid_argument("min_enclosing_ball: mixed point dimensions");
        for (std::size_t c = 0; c < d; ++c)
            m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) = points[j][c];
    }
    return min_enclosing_ball(m);
}

}  // namespace rgc
