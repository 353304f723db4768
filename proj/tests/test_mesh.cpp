#include "nctvem/mesh.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

using namespace nctvem;

namespace {

// Independent checks written without the library's edge table.

double shoelace(const std::vector<Point>& p)
{
    double a = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        const Point& u = p[i];
        const Point& v = p[(i + 1) % p.size()];
        a += u.x() * v.y() - u.y() * v.x();
    }
    return a / 2;
}

bool is_convex(const std::vector<Point>& p)
{
    for (size_t i = 0; i < p.size(); ++i) {
        const Point& a = p[i];
        const Point& b = p[(i + 1) % p.size()];
        const Point& c = p[(i + 2) % p.size()];
        const double cr = (b - a).x() * (c - b).y() - (b - a).y() * (c - b).x();
        if (cr < -1e-12)
            return false;
    }
    return true;
}

/// Breadth-first layers from the elements whose vertices touch y = 0, by shared vertices.
std::vector<int> brute_force_layers(const PolygonMesh& mesh)
{
    const int ne = mesh.n_elements();
    std::vector<int> layer(ne, -1);
    std::vector<std::set<int>> verts(ne);
    for (int e = 0; e < ne; ++e) {
        for (int v : mesh.element(e).vertices)
            verts[e].insert(v);
        for (int v : verts[e])
            if (std::abs(mesh.vertices()[v].y()) < 1e-12)
                layer[e] = 0;
        // an element whose interior crosses y = 0 touches it too
        double lo = 1e9, hi = -1e9;
        for (int v : verts[e]) {
            lo = std::min(lo, mesh.vertices()[v].y());
            hi = std::max(hi, mesh.vertices()[v].y());
        }
        if (lo < 0 && hi > 0)
            layer[e] = 0;
    }
    for (int l = 1; l < ne; ++l) {
        bool any = false;
        for (int e = 0; e < ne; ++e) {
            if (layer[e] >= 0)
                continue;
            for (int f = 0; f < ne && layer[e] < 0; ++f)
                if (layer[f] == l - 1)
                    for (int v : verts[e])
                        if (verts[f].count(v)) {
                            layer[e] = l;
                            any = true;
                            break;
                        }
        }
        if (!any)
            break;
    }
    return layer;
}

void check_invariants(const PolygonMesh& mesh)
{
    double area = 0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto poly = mesh.polygon(e);
        CHECK(shoelace(poly) > 0);
        area += shoelace(poly);
    }
    CHECK(area == doctest::Approx(4.0).epsilon(1e-12));

    // every directed loop edge appears once; interior edges appear in both directions
    std::map<std::pair<int, int>, int> directed;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto& vs = mesh.element(e).vertices;
        for (size_t i = 0; i < vs.size(); ++i)
            ++directed[{vs[i], vs[(i + 1) % vs.size()]}];
    }
    int n_undirected = 0;
    for (const auto& [key, count] : directed) {
        CHECK(count == 1);
        const bool twin = directed.count({key.second, key.first}) > 0;
        if (!twin) {
            const Point& a = mesh.vertices()[key.first];
            const Point& b = mesh.vertices()[key.second];
            const Point m = (a + b) / 2;
            CHECK(std::min(std::abs(std::abs(m.x()) - 1), std::abs(std::abs(m.y()) - 1)) < 1e-12);
        }
        n_undirected += twin ? 1 : 2;
    }
    CHECK(mesh.n_edges() == n_undirected / 2);

    // adjacency symmetry
    for (int ed = 0; ed < mesh.n_edges(); ++ed) {
        const Edge& edge = mesh.edge(ed);
        for (int el : edge.elements) {
            if (el < 0)
                continue;
            const auto& list = mesh.element(el).edges;
            CHECK(std::find(list.begin(), list.end(), ed) != list.end());
        }
    }
    CHECK(brute_force_layers(mesh) == compute_layers(mesh));
}

} // namespace

TEST_CASE("cartesian 2x2: four unit squares, twelve edges, one layer")
{
    const PolygonMesh m = generate_cartesian(2);
    CHECK(m.n_elements() == 4);
    CHECK(m.n_edges() == 12);
    for (const Element& e : m.elements()) {
        CHECK(e.layer == 0);
        CHECK(e.area == doctest::Approx(1.0));
    }
    check_invariants(m);
}

TEST_CASE("cartesian 4x4: diameters and layers")
{
    const PolygonMesh m = generate_cartesian(4);
    CHECK(m.n_elements() == 16);
    for (const Element& e : m.elements()) {
        CHECK(e.diameter == doctest::Approx(std::sqrt(2.0) / 2));
        const bool inner_row = std::abs(e.barycenter.y()) < 0.5;
        CHECK(e.layer == (inner_row ? 0 : 1));
        CHECK(e.subdomain == (e.barycenter.y() < 0 ? Subdomain::Omega1 : Subdomain::Omega2));
    }
    int interface = 0;
    for (const Edge& e : m.edges())
        interface += e.kind == EdgeKind::Interface;
    CHECK(interface == 4);
    check_invariants(m);
}

TEST_CASE("cartesian 3x3: the middle row is cut by the interface")
{
    const PolygonMesh m = generate_cartesian(3);
    for (const Element& e : m.elements()) {
        const bool middle = std::abs(e.barycenter.y()) < 1e-12;
        CHECK((e.subdomain == Subdomain::Cut) == middle);
    }
    check_invariants(m);
}

TEST_CASE("graded meshes satisfy the mesh invariants and the grading bounds")
{
    const double sigma = 1.0 / 3;
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        const PolygonMesh iso = generate_graded_iso(n, sigma);
        const PolygonMesh aniso = generate_graded_aniso(n, sigma);
        check_invariants(iso);
        check_invariants(aniso);
        CHECK(iso.n_layers() == n + 1);
        CHECK(aniso.n_layers() == n + 1);
        CHECK(aniso.n_elements() == 2 * n + 1);

        for (int l = 0; l <= n; ++l) {
            double h_iso = 0, h_aniso = 0;
            for (int e = 0; e < iso.n_elements(); ++e)
                if (iso.element(e).layer == l)
                    h_iso = std::max(h_iso, iso.element(e).diameter);
            for (int e = 0; e < aniso.n_elements(); ++e)
                if (aniso.element(e).layer == l)
                    h_aniso = std::max(h_aniso, aniso.extents(e).y());
            const double scale = std::pow(sigma, n - l);
            CAPTURE(l);
            CHECK(h_iso / scale >= 0.5);
            CHECK(h_iso / scale <= 2 * std::sqrt(2.0) * (1 + 1e-12));
            CHECK(h_aniso / scale >= 0.5);
            CHECK(h_aniso / scale <= 2 * std::sqrt(2.0) * (1 + 1e-12));
        }
        for (int e = 0; e < iso.n_elements(); ++e) {
            const Eigen::Vector2d ext = iso.extents(e);
            CHECK(ext.maxCoeff() / ext.minCoeff() <= 3 * (1 + 1e-12));
        }
        for (int e = 0; e < aniso.n_elements(); ++e)
            CHECK(aniso.extents(e).x() == doctest::Approx(2.0));
    }
}

TEST_CASE("graded meshes: layer 0 abuts the interface and refinement is nested")
{
    const double sigma = 1.0 / 3;
    auto key = [](const PolygonMesh& m, int e) {
        const auto poly = m.polygon(e);
        double x0 = 9, x1 = -9, y0 = 9, y1 = -9;
        for (const Point& p : poly) {
            x0 = std::min(x0, p.x());
            x1 = std::max(x1, p.x());
            y0 = std::min(y0, p.y());
            y1 = std::max(y1, p.y());
        }
        auto r = [](double v) { return std::lround(v * 1e9); };
        return std::array<long, 4>{r(x0), r(x1), r(y0), r(y1)};
    };
    for (auto gen : {&generate_graded_iso, &generate_graded_aniso}) {
        for (int n = 1; n <= 4; ++n) {
            const PolygonMesh coarse = gen(n, sigma);
            const PolygonMesh fine = gen(n + 1, sigma);
            for (const Element& e : coarse.elements())
                if (e.layer == 0)
                    CHECK(e.subdomain == Subdomain::Cut);
            // the coarse central strip is split in the fine mesh; all outer strips carry over
            for (int l = 2; l <= n + 1; ++l) {
                std::set<std::array<long, 4>> a, b;
                for (int e = 0; e < fine.n_elements(); ++e)
                    if (fine.element(e).layer == l)
                        a.insert(key(fine, e));
                for (int e = 0; e < coarse.n_elements(); ++e)
                    if (coarse.element(e).layer == l - 1)
                        b.insert(key(coarse, e));
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("graded iso first meshes: counts for grading 1/3")
{
    const PolygonMesh t1 = generate_graded_iso(1, 1.0 / 3);
    CHECK(t1.n_elements() == 5);
    CHECK(t1.layer_counts() == std::vector<int>{3, 2});
    const PolygonMesh t2 = generate_graded_iso(2, 1.0 / 3);
    CHECK(t2.n_elements() == 17);
    CHECK(t2.layer_counts() == std::vector<int>{9, 6, 2});
    CHECK(brute_force_layers(t2) == compute_layers(t2));
}

TEST_CASE("graded generators reject a grading outside (0, 1)")
{
    CHECK_THROWS_AS(generate_graded_iso(2, 0.0), MeshError);
    CHECK_THROWS_AS(generate_graded_iso(2, 1.0), MeshError);
    CHECK_THROWS_AS(generate_graded_aniso(2, -0.5), MeshError);
    CHECK_THROWS_AS(generate_graded_aniso(0, 0.5), MeshError);
}

TEST_CASE("rectangles with hanging vertices are split into shared sub-edges")
{
    // one large bottom cell under two top cells
    const PolygonMesh m = mesh_from_rectangles({{-1, 1, -1, 0}, {-1, 0, 0, 1}, {0, 1, 0, 1}});
    CHECK(m.element(0).n_edges() == 5);
    check_invariants(m);
}

TEST_CASE("save and load round-trip preserves the topology")
{
    const PolygonMesh m = generate_graded_iso(2, 1.0 / 3);
    std::stringstream ss;
    save_mesh(m, ss);
    const PolygonMesh r = load_mesh(ss);
    REQUIRE(r.n_elements() == m.n_elements());
    CHECK(r.n_edges() == m.n_edges());
    for (int e = 0; e < m.n_elements(); ++e) {
        CHECK(r.element(e).vertices == m.element(e).vertices);
        CHECK(r.element(e).layer == m.element(e).layer);
        CHECK(r.element(e).subdomain == m.element(e).subdomain);
    }
}

TEST_CASE("load rejects a clockwise loop and names the element")
{
    std::istringstream in("ncvem-mesh 1\nvertices 4\n-1 -1\n1 -1\n1 1\n-1 1\nelements 1\n4 0 3 2 1\n");
    try {
        load_mesh(in);
        FAIL("expected a MeshError");
    } catch (const MeshError& e) {
        CHECK(std::string(e.what()).find("element 0") != std::string::npos);
    }
}

TEST_CASE("load rejects malformed files and incomplete tilings")
{
    std::istringstream bad_header("mesh 2\n");
    CHECK_THROWS_AS(load_mesh(bad_header), MeshError);
    std::istringstream truncated("ncvem-mesh 1\nvertices 3\n0 0\n1 0\n");
    CHECK_THROWS_AS(load_mesh(truncated), MeshError);
    // a single square leaves an interior edge unmatched
    std::istringstream dangling("ncvem-mesh 1\nvertices 4\n-1 -1\n0 -1\n0 0\n-1 0\nelements 1\n4 0 1 2 3\n");
    CHECK_THROWS_AS(load_mesh(dangling), MeshError);
    std::istringstream index("ncvem-mesh 1\nvertices 3\n0 0\n1 0\n0 1\nelements 1\n3 0 1 7\n");
    CHECK_THROWS_AS(load_mesh(index), MeshError);
}

TEST_CASE("Voronoi files load, are convex and are classified consistently")
{
    for (int n : {16, 64, 128, 256}) {
        CAPTURE(n);
        const PolygonMesh m = load_mesh_file(std::string(NCTVEM_DATA_DIR) + "/meshes/voronoi_" + std::to_string(n) + ".mesh");
        CHECK(m.n_elements() == n);
        check_invariants(m);
        int on_gamma = 0;
        for (const Edge& e : m.edges()) {
            const bool flat = std::abs(m.vertices()[e.vertices[0]].y()) < 1e-12 &&
                              std::abs(m.vertices()[e.vertices[1]].y()) < 1e-12;
            on_gamma += flat;
            CHECK((e.kind == EdgeKind::Interface) == (flat && !e.on_boundary()));
        }
        CHECK(on_gamma > 0);
        for (int e = 0; e < m.n_elements(); ++e) {
            CHECK(is_convex(m.polygon(e)));
            CHECK(m.element(e).subdomain != Subdomain::Cut);
        }
    }
}
