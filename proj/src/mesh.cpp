#include "nctvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

namespace nctvem {

const char* to_string(Subdomain s)
{
    switch (s) {
    case Subdomain::Omega1: return "Omega1";
    case Subdomain::Omega2: return "Omega2";
    case Subdomain::Cut: return "Cut";
    }
    return "?";
}

namespace {

double cross(const Point& u, const Point& v) { return u.x() * v.y() - u.y() * v.x(); }

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2)
{
    const double d1 = cross(q2 - q1, p1 - q1);
    const double d2 = cross(q2 - q1, p2 - q1);
    const double d3 = cross(p2 - p1, q1 - p1);
    const double d4 = cross(p2 - p1, q2 - p1);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool on_domain_boundary(const Point& p)
{
    const double t = geometry_tolerance;
    return std::abs(std::abs(p.x()) - 1) < t || std::abs(std::abs(p.y()) - 1) < t;
}

[[noreturn]] void fail_element(int e, const std::string& what)
{
    throw MeshError("element " + std::to_string(e) + ": " + what);
}

} // namespace

PolygonMesh PolygonMesh::build(std::vector<Point> vertices, std::vector<std::vector<int>> loops)
{
    PolygonMesh mesh;
    mesh.vertices_ = std::move(vertices);
    const int nv = static_cast<int>(mesh.vertices_.size());
    const double tol = geometry_tolerance;

    for (const Point& p : mesh.vertices_)
        if (!p.allFinite() || p.cwiseAbs().maxCoeff() > 1 + 1e-9)
            throw MeshError("vertex outside the domain (-1, 1)^2");

    if (loops.empty())
        throw MeshError("mesh has no elements");

    std::map<std::pair<int, int>, int> edge_ids;
    mesh.elements_.resize(loops.size());
    for (int ei = 0; ei < static_cast<int>(loops.size()); ++ei) {
        Element& el = mesh.elements_[ei];
        el.vertices = std::move(loops[ei]);
        const int k = static_cast<int>(el.vertices.size());
        if (k < 3)
            fail_element(ei, "fewer than 3 vertices");
        for (int v : el.vertices)
            if (v < 0 || v >= nv)
                fail_element(ei, "vertex index out of range");

        std::vector<Point> poly(k);
        for (int i = 0; i < k; ++i)
            poly[i] = mesh.vertices_[el.vertices[i]];

        double a2 = 0;
        Point c = Point::Zero();
        for (int i = 0; i < k; ++i) {
            const Point& p = poly[i];
            const Point& q = poly[(i + 1) % k];
            if ((q - p).norm() < tol)
                fail_element(ei, "repeated vertex");
            const double w = cross(p, q);
            a2 += w;
            c += w * (p + q);
        }
        if (a2 <= 0)
            fail_element(ei, "vertex loop is not counter-clockwise");
        el.area = a2 / 2;
        el.barycenter = c / (3 * a2);

        for (int i = 0; i < k; ++i)
            for (int j = i + 2; j < k; ++j) {
                if (i == 0 && j == k - 1)
                    continue;
                if (segments_intersect(poly[i], poly[(i + 1) % k], poly[j], poly[(j + 1) % k]))
                    fail_element(ei, "vertex loop is self-intersecting");
            }

        for (int i = 0; i < k; ++i) {
            const Point& p = poly[i];
            const Point& q = poly[(i + 1) % k];
            if (cross(q - p, el.barycenter - p) <= tol * (q - p).norm())
                fail_element(ei, "not star-shaped with respect to its barycenter");
        }

        el.diameter = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                el.diameter = std::max(el.diameter, (poly[i] - poly[j]).norm());

        double ymin = poly[0].y(), ymax = poly[0].y();
        for (const Point& p : poly) {
            ymin = std::min(ymin, p.y());
            ymax = std::max(ymax, p.y());
        }
        if (ymin < -tol && ymax > tol)
            el.subdomain = Subdomain::Cut;
        else if (ymax <= tol)
            el.subdomain = Subdomain::Omega1;
        else
            el.subdomain = Subdomain::Omega2;

        el.edges.resize(k);
        el.orientation.resize(k);
        for (int i = 0; i < k; ++i) {
            const int a = el.vertices[i];
            const int b = el.vertices[(i + 1) % k];
            const auto key = std::minmax(a, b);
            auto [it, inserted] = edge_ids.try_emplace({key.first, key.second}, mesh.n_edges());
            if (inserted) {
                Edge e;
                e.vertices = {a, b};
                e.elements = {ei, -1};
                e.length = (mesh.vertices_[b] - mesh.vertices_[a]).norm();
                e.tangent = (mesh.vertices_[b] - mesh.vertices_[a]) / e.length;
                mesh.edges_.push_back(e);
                el.orientation[i] = 1;
            } else {
                Edge& e = mesh.edges_[it->second];
                if (e.elements[1] >= 0)
                    fail_element(ei, "edge " + std::to_string(it->second) + " shared by more than two elements");
                if (e.vertices[0] != b)
                    fail_element(ei, "traverses edge " + std::to_string(it->second) +
                                         " in the same direction as element " + std::to_string(e.elements[0]));
                e.elements[1] = ei;
                el.orientation[i] = -1;
            }
            el.edges[i] = it->second;
        }
    }

    double total = 0;
    for (const Element& el : mesh.elements_)
        total += el.area;
    if (std::abs(total - 4) > 1e-9)
        throw MeshError("element areas sum to " + std::to_string(total) + ", expected 4");

    for (int i = 0; i < mesh.n_edges(); ++i) {
        Edge& e = mesh.edges_[i];
        const Point& a = mesh.vertices_[e.vertices[0]];
        const Point& b = mesh.vertices_[e.vertices[1]];
        if (e.on_boundary()) {
            if (!on_domain_boundary(a) || !on_domain_boundary(b) || !on_domain_boundary((a + b) / 2))
                throw MeshError("dangling edge " + std::to_string(i) + " of element " +
                                std::to_string(e.elements[0]) + " lies inside the domain");
            e.kind = EdgeKind::Boundary;
        } else if (std::abs(a.y()) < tol && std::abs(b.y()) < tol) {
            e.kind = EdgeKind::Interface;
        } else {
            e.kind = EdgeKind::Interior;
        }
    }

    const std::vector<int> layers = compute_layers(mesh);
    for (int i = 0; i < mesh.n_elements(); ++i) {
        if (layers[i] < 0)
            throw MeshError("mesh is disconnected: element " + std::to_string(i) + " is unreachable");
        mesh.elements_[i].layer = layers[i];
    }
    return mesh;
}

Segment PolygonMesh::segment(int edge) const
{
    const Edge& e = edges_[edge];
    return {vertices_[e.vertices[0]], vertices_[e.vertices[1]]};
}

Point PolygonMesh::outward_normal(int element, int local) const
{
    const Element& el = elements_[element];
    const Point t = edges_[el.edges[local]].tangent * el.orientation[local];
    return {t.y(), -t.x()};
}

std::vector<Point> PolygonMesh::polygon(int element) const
{
    std::vector<Point> out;
    for (int v : elements_[element].vertices)
        out.push_back(vertices_[v]);
    return out;
}

Eigen::Vector2d PolygonMesh::extents(int element) const
{
    Point lo = Point::Constant(1e300), hi = Point::Constant(-1e300);
    for (int v : elements_[element].vertices) {
        lo = lo.cwiseMin(vertices_[v]);
        hi = hi.cwiseMax(vertices_[v]);
    }
    return hi - lo;
}

double PolygonMesh::mesh_size() const
{
    double h = 0;
    for (const Element& el : elements_)
        h = std::max(h, el.diameter);
    return h;
}

int PolygonMesh::n_layers() const
{
    int n = 0;
    for (const Element& el : elements_)
        n = std::max(n, el.layer + 1);
    return n;
}

std::vector<int> PolygonMesh::layer_counts() const
{
    std::vector<int> counts(n_layers(), 0);
    for (const Element& el : elements_)
        ++counts[el.layer];
    return counts;
}

std::vector<int> compute_layers(const PolygonMesh& mesh)
{
    const int ne = mesh.n_elements();
    std::vector<std::vector<int>> by_vertex(mesh.vertices().size());
    for (int i = 0; i < ne; ++i)
        for (int v : mesh.element(i).vertices)
            by_vertex[v].push_back(i);

    std::vector<int> layer(ne, -1);
    std::queue<int> queue;
    for (int i = 0; i < ne; ++i) {
        double ymin = 1e300, ymax = -1e300;
        for (int v : mesh.element(i).vertices) {
            ymin = std::min(ymin, mesh.vertices()[v].y());
            ymax = std::max(ymax, mesh.vertices()[v].y());
        }
        if (ymin <= geometry_tolerance && ymax >= -geometry_tolerance) {
            layer[i] = 0;
            queue.push(i);
        }
    }
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop();
        for (int v : mesh.element(i).vertices)
            for (int j : by_vertex[v])
                if (layer[j] < 0) {
                    layer[j] = layer[i] + 1;
                    queue.push(j);
                }
    }
    return layer;
}

} // namespace nctvem
