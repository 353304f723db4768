#include "nctvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nctvem {

PolygonMesh generate_cartesian(int m)
{
    if (m < 1)
        throw MeshError("cartesian mesh needs m >= 1");
    std::vector<Point> vertices;
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= m; ++i)
            vertices.emplace_back(-1 + 2.0 * i / m, -1 + 2.0 * j / m);
    std::vector<std::vector<int>> loops;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
            const int v = j * (m + 1) + i;
            loops.push_back({v, v + 1, v + m + 2, v + m + 1});
        }
    return PolygonMesh::build(std::move(vertices), std::move(loops));
}

PolygonMesh mesh_from_rectangles(const std::vector<std::array<double, 4>>& rectangles)
{
    constexpr double scale = 1099511627776.0; // 2^40
    std::map<std::pair<long long, long long>, int> index;
    std::vector<Point> vertices;
    auto add = [&](double x, double y) {
        const std::pair<long long, long long> key{std::llround(x * scale), std::llround(y * scale)};
        if (index.try_emplace(key, static_cast<int>(vertices.size())).second)
            vertices.emplace_back(x, y);
    };
    for (const auto& r : rectangles) {
        add(r[0], r[2]);
        add(r[1], r[2]);
        add(r[1], r[3]);
        add(r[0], r[3]);
    }

    const double tol = 1e-11;
    std::vector<std::vector<int>> loops;
    for (const auto& r : rectangles) {
        const double w = r[1] - r[0], h = r[3] - r[2];
        // perimeter parameter, counter-clockwise from the lower-left corner
        std::vector<std::pair<double, int>> on_boundary;
        for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
            const double x = vertices[v].x(), y = vertices[v].y();
            if (x < r[0] - tol || x > r[1] + tol || y < r[2] - tol || y > r[3] + tol)
                continue;
            double s;
            if (std::abs(y - r[2]) < tol)
                s = x - r[0];
            else if (std::abs(x - r[1]) < tol)
                s = w + (y - r[2]);
            else if (std::abs(y - r[3]) < tol)
                s = w + h + (r[1] - x);
            else if (std::abs(x - r[0]) < tol)
                s = 2 * w + h + (r[3] - y);
            else
                continue;
            on_boundary.emplace_back(s, v);
        }
        std::sort(on_boundary.begin(), on_boundary.end());
        std::vector<int> loop;
        for (const auto& [s, v] : on_boundary)
            loop.push_back(v);
        loops.push_back(std::move(loop));
    }
    return PolygonMesh::build(std::move(vertices), std::move(loops));
}

namespace {

void check_grading(int n, double sigma)
{
    if (n < 1)
        throw MeshError("graded mesh needs n >= 1");
    if (!(sigma > 0 && sigma < 1))
        throw MeshError("grading parameter must lie in (0, 1)");
}

} // namespace

PolygonMesh generate_graded_iso(int n, double sigma)
{
    check_grading(n, sigma);
    // cells of strip j (|y| between sigma^j and sigma^(j-1)) have width w[j-1];
    // the central strip |y| < sigma^n has width w[n]
    std::vector<int> cells(n + 1, 1);
    std::vector<double> w(n + 1, 2.0);
    for (int j = 1; j <= n; ++j) {
        const int m = std::max(1, static_cast<int>(std::lround(w[j - 1] / (2 * std::pow(sigma, j)))));
        cells[j] = cells[j - 1] * m;
        w[j] = 2.0 / cells[j];
    }

    std::vector<std::array<double, 4>> rectangles;
    auto strip = [&](double y0, double y1, int count) {
        for (int i = 0; i < count; ++i)
            rectangles.push_back({-1 + 2.0 * i / count, -1 + 2.0 * (i + 1) / count, y0, y1});
    };
    for (int j = 1; j <= n; ++j) {
        const double lo = std::pow(sigma, j);
        const double hi = j == 1 ? 1.0 : std::pow(sigma, j - 1);
        strip(-hi, -lo, cells[j - 1]);
        strip(lo, hi, cells[j - 1]);
    }
    strip(-std::pow(sigma, n), std::pow(sigma, n), cells[n]);
    return mesh_from_rectangles(rectangles);
}

PolygonMesh generate_graded_aniso(int n, double sigma)
{
    check_grading(n, sigma);
    std::vector<std::array<double, 4>> rectangles;
    for (int j = 1; j <= n; ++j) {
        const double lo = std::pow(sigma, j);
        const double hi = j == 1 ? 1.0 : std::pow(sigma, j - 1);
        rectangles.push_back({-1, 1, -hi, -lo});
        rectangles.push_back({-1, 1, lo, hi});
    }
    rectangles.push_back({-1, 1, -std::pow(sigma, n), std::pow(sigma, n)});
    return mesh_from_rectangles(rectangles);
}

} // namespace nctvem
