#include "nctvem/postprocess.hpp"

#include "nctvem/quadrature.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace nctvem {

namespace {

double cross(const Point& u, const Point& v) { return u.x() * v.y() - u.y() * v.x(); }

} // namespace

PolygonRule polygon_rule(const std::vector<Point>& polygon, const Point& center, int order)
{
    const TriangleRule tri = triangle_rule(order);
    PolygonRule rule;
    const int k = static_cast<int>(polygon.size());
    for (int i = 0; i < k; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % k];
        const double j = cross(a - center, b - center);
        if (j <= 0)
            throw MeshError("polygon is not star-shaped with respect to the quadrature center");
        for (int p = 0; p < tri.size(); ++p) {
            const Point& st = tri.points[p];
            rule.points.push_back(center + st.x() * (a - center) + st.y() * (b - center));
            rule.weights.push_back(tri.weights[p] * j);
        }
    }
    return rule;
}

Complex polygon_quadrature(const std::vector<Point>& polygon, const Point& center,
                           const std::function<Complex(const Point&)>& f, int order)
{
    const PolygonRule rule = polygon_rule(polygon, center, order);
    Complex sum = 0;
    for (size_t p = 0; p < rule.points.size(); ++p)
        sum += rule.weights[p] * f(rule.points[p]);
    return sum;
}

Complex polygon_quadrature(const PolygonMesh& mesh, int element, const std::function<Complex(const Point&)>& f,
                           int order)
{
    return polygon_quadrature(mesh.polygon(element), mesh.element(element).barycenter, f, order);
}

std::vector<Point> clip_polygon(const std::vector<Point>& polygon, bool below)
{
    auto inside = [&](const Point& p) { return below ? p.y() <= 0 : p.y() >= 0; };
    std::vector<Point> out;
    const int k = static_cast<int>(polygon.size());
    for (int i = 0; i < k; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % k];
        if (inside(a))
            out.push_back(a);
        if (inside(a) != inside(b) && a.y() != 0 && b.y() != 0) {
            const double t = a.y() / (a.y() - b.y());
            out.push_back(Point(a.x() + t * (b.x() - a.x()), 0.0));
        }
    }
    // drop repeated points
    std::vector<Point> clean;
    for (const Point& p : out)
        if (clean.empty() || (p - clean.back()).norm() > 1e-14)
            clean.push_back(p);
    while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-14)
        clean.pop_back();
    return clean;
}

Point polygon_centroid(const std::vector<Point>& polygon)
{
    double a2 = 0;
    Point c = Point::Zero();
    const int k = static_cast<int>(polygon.size());
    for (int i = 0; i < k; ++i) {
        const double w = cross(polygon[i], polygon[(i + 1) % k]);
        a2 += w;
        c += w * (polygon[i] + polygon[(i + 1) % k]);
    }
    return c / (3 * a2);
}

Complex ElementExpansion::eval(const Point& x) const
{
    Complex s = 0;
    for (int l = 0; l < basis->size(); ++l)
        s += coefficients(l) * basis->waves[l].eval(x);
    return s;
}

CVector2 ElementExpansion::grad(const Point& x) const
{
    CVector2 s = CVector2::Zero();
    for (int l = 0; l < basis->size(); ++l)
        s += coefficients(l) * basis->waves[l].grad(x);
    return s;
}

std::vector<ElementExpansion> projected_solution(const PolygonMesh& mesh, const DiscreteSolution& solution)
{
    std::vector<ElementExpansion> out(mesh.n_elements());
    for (int e = 0; e < mesh.n_elements(); ++e) {
        out[e].basis = &solution.element_bases[e];
        out[e].coefficients = solution.projected_coefficients(mesh, e);
    }
    return out;
}

ErrorReport compute_errors(const PolygonMesh& mesh, const std::vector<ElementExpansion>& uh,
                           const ExactSolution& exact, int order)
{
    const InterfaceProblem& problem = exact.problem();
    ErrorReport rep;
    rep.element_h1_sq.assign(mesh.n_elements(), 0);
    rep.element_l2_sq.assign(mesh.n_elements(), 0);
    double num_h1 = 0, num_l2 = 0, den_h1 = 0, den_l2 = 0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const Element& el = mesh.element(e);
        const ElementExpansion& u = uh[e];
        const double ke = u.basis->k;
        const double kmax = std::max({ke, problem.k1(), problem.k2()});
        const int n = std::max(order, static_cast<int>(std::ceil(2 * kmax * el.diameter)) + 4);

        std::vector<std::pair<std::vector<Point>, bool>> pieces;
        const std::vector<Point> poly = mesh.polygon(e);
        switch (el.subdomain) {
        case Subdomain::Omega1: pieces.emplace_back(poly, true); break;
        case Subdomain::Omega2: pieces.emplace_back(poly, false); break;
        case Subdomain::Cut:
            pieces.emplace_back(clip_polygon(poly, true), true);
            pieces.emplace_back(clip_polygon(poly, false), false);
            break;
        }
        double eh1 = 0, el2 = 0;
        for (const auto& [piece, below] : pieces) {
            const double kp = below ? problem.k1() : problem.k2();
            const PolygonRule rule = polygon_rule(piece, polygon_centroid(piece), n);
            for (size_t p = 0; p < rule.points.size(); ++p) {
                const Point& x = rule.points[p];
                const Complex ue = below ? exact.eval_below(x) : exact.eval_above(x);
                const CVector2 ge = below ? exact.grad_below(x) : exact.grad_above(x);
                const Complex d = ue - u.eval(x);
                const CVector2 gd = ge - u.grad(x);
                const double w = rule.weights[p];
                const double d2 = std::norm(d);
                el2 += w * d2;
                eh1 += w * (gd.squaredNorm() + ke * ke * d2);
                den_l2 += w * std::norm(ue);
                den_h1 += w * (ge.squaredNorm() + kp * kp * std::norm(ue));
            }
        }
        rep.element_h1_sq[e] = eh1;
        rep.element_l2_sq[e] = el2;
        num_h1 += eh1;
        num_l2 += el2;
    }
    rep.err_h1 = std::sqrt(num_h1);
    rep.err_l2 = std::sqrt(num_l2);
    rep.norm_h1 = std::sqrt(den_h1);
    rep.norm_l2 = std::sqrt(den_l2);
    rep.err_h1_rel = rep.err_h1 / rep.norm_h1;
    rep.err_l2_rel = rep.err_l2 / rep.norm_l2;
    return rep;
}

namespace {

bool contains(const std::vector<Point>& poly, const Point& x)
{
    const int k = static_cast<int>(poly.size());
    for (int i = 0; i < k; ++i)
        if (cross(poly[(i + 1) % k] - poly[i], x - poly[i]) < -1e-12)
            return false;
    return true;
}

} // namespace

void write_raster(std::ostream& out, const PolygonMesh& mesh, const std::vector<ElementExpansion>& uh,
                  const ExactSolution& exact, int nx, int ny)
{
    std::vector<std::vector<Point>> polys;
    for (int e = 0; e < mesh.n_elements(); ++e)
        polys.push_back(mesh.polygon(e));
    out << "x,y,element,re_uh,im_uh,re_u,im_u\n";
    out << std::setprecision(10);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Point x(-1 + 2.0 * (i + 0.5) / nx, -1 + 2.0 * (j + 0.5) / ny);
            int found = -1;
            for (int e = 0; e < mesh.n_elements() && found < 0; ++e)
                if (contains(polys[e], x))
                    found = e;
            if (found < 0)
                continue;
            const Complex v = uh[found].eval(x);
            const Complex u = exact.eval(x);
            out << x.x() << ',' << x.y() << ',' << found << ',' << v.real() << ',' << v.imag() << ',' << u.real()
                << ',' << u.imag() << '\n';
        }
}

} // namespace nctvem
