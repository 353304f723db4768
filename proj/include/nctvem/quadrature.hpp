#pragma once

#include "nctvem/common.hpp"

#include <vector>

namespace nctvem {

/// Quadrature rule on the unit interval [0, 1].
struct LineRule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre rule with n points on [0, 1], exact for degree 2n - 1.
/// Nodes come from Newton iteration on the Legendre recurrence in long double.
LineRule gauss_legendre(int n);

/// Rule on the reference triangle {(s, t) : s, t >= 0, s + t <= 1}; weights sum to 1/2.
struct TriangleRule
{
    std::vector<Eigen::Vector2d> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }
};

/// Collapsed (Duffy) Gauss rule exact for polynomials of total degree <= order.
TriangleRule triangle_rule(int order);

} // namespace nctvem
