#pragma once

#include "nctvem/common.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace nctvem {

/// Position of an element relative to the interface y = 0.
enum class Subdomain { Omega1, Omega2, Cut };

const char* to_string(Subdomain s);

enum class EdgeKind { Interior, Interface, Boundary };

struct Edge
{
    std::array<int, 2> vertices{-1, -1};
    /// Adjacent elements; elements[1] == -1 on the boundary of the domain.
    std::array<int, 2> elements{-1, -1};
    double length = 0;
    Point tangent = Point::Zero();
    EdgeKind kind = EdgeKind::Interior;

    bool on_boundary() const { return elements[1] < 0; }
};

struct Element
{
    /// Counter-clockwise vertex loop, hanging vertices included.
    std::vector<int> vertices;
    /// edges[i] joins vertices[i] and vertices[i + 1].
    std::vector<int> edges;
    /// +1 when the element walks edges[i] from its first to its second vertex.
    std::vector<int> orientation;
    double area = 0;
    Point barycenter = Point::Zero();
    double diameter = 0;
    Subdomain subdomain = Subdomain::Omega1;
    int layer = 0;

    int n_edges() const { return static_cast<int>(edges.size()); }
};

/// Immutable polygonal decomposition of (-1, 1)^2 with exact edge sharing.
class PolygonMesh
{
public:
    PolygonMesh() = default;

    /// Validates the loops and derives edges, metrics, subdomains and layers.
    /// Throws MeshError naming the offending element or edge.
    static PolygonMesh build(std::vector<Point> vertices, std::vector<std::vector<int>> loops);

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Element>& elements() const { return elements_; }
    const std::vector<Edge>& edges() const { return edges_; }

    int n_elements() const { return static_cast<int>(elements_.size()); }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const Element& element(int i) const { return elements_[i]; }
    const Edge& edge(int i) const { return edges_[i]; }

    Segment segment(int edge) const;
    /// Outward unit normal of element `element` on its local edge `local`.
    Point outward_normal(int element, int local) const;
    std::vector<Point> polygon(int element) const;
    /// Extents of the axis-aligned bounding box: (parallel to y = 0, normal to it).
    Eigen::Vector2d extents(int element) const;

    /// max over elements of the diameter.
    double mesh_size() const;
    /// Number of layers (max layer index + 1).
    int n_layers() const;
    std::vector<int> layer_counts() const;

private:
    std::vector<Point> vertices_;
    std::vector<Element> elements_;
    std::vector<Edge> edges_;
};

inline constexpr double geometry_tolerance = 1e-12;

/// Layer index per element: 0 for elements whose closure meets y = 0,
/// then breadth-first over vertex adjacency.
std::vector<int> compute_layers(const PolygonMesh& mesh);

// generators

/// m x m uniform squares on (-1, 1)^2.
PolygonMesh generate_cartesian(int m);

/// Isotropic geometric grading toward y = 0 with n refinement steps.
/// The layer-0 strip |y| < sigma^n is cut by the interface.
PolygonMesh generate_graded_iso(int n, double sigma);

/// Anisotropic grading: full-width horizontal slabs, thinnest around y = 0.
PolygonMesh generate_graded_aniso(int n, double sigma);

/// Builds a conforming mesh from a tiling of (-1, 1)^2 by axis-aligned
/// rectangles (x0, x1, y0, y1); vertices of neighbours lying on a rectangle's
/// sides become hanging vertices of its loop.
PolygonMesh mesh_from_rectangles(const std::vector<std::array<double, 4>>& rectangles);

// io

PolygonMesh load_mesh(std::istream& in);
PolygonMesh load_mesh_file(const std::string& path);
void save_mesh(const PolygonMesh& mesh, std::ostream& out);
void save_mesh_file(const PolygonMesh& mesh, const std::string& path);

} // namespace nctvem
