#include "nctvem/quadrature.hpp"

#include <cmath>

namespace nctvem {

LineRule gauss_legendre(int n)
{
    if (n < 1) {
        throw Error("gauss_legendre: need at least one point");
    }
    LineRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const long double pil = 3.141592653589793238462643383279502884L;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(pil * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) {
                break;
            }
        }
        // recompute derivative at the converged node
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const long double w = 2 / ((1 - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1]
        rule.nodes[i] = static_cast<double>((1 - x) / 2);
        rule.nodes[n - 1 - i] = static_cast<double>((1 + x) / 2);
        rule.weights[i] = static_cast<double>(w / 2);
        rule.weights[n - 1 - i] = static_cast<double>(w / 2);
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.5;
    }
    return rule;
}

TriangleRule triangle_rule(int order)
{
    // u-direction carries the (1 - u) Jacobian, hence one extra point.
    const int n = order / 2 + 2;
    const LineRule g = gauss_legendre(n);
    TriangleRule rule;
    rule.points.reserve(static_cast<size_t>(n) * n);
    rule.weights.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double u = g.nodes[i];
        for (int j = 0; j < n; ++j) {
            const double v = g.nodes[j];
            rule.points.emplace_back(u, v * (1 - u));
            rule.weights.push_back(g.weights[i] * g.weights[j] * (1 - u));
        }
    }
    return rule;
}

} // namespace nctvem
