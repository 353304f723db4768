#pragma once

#include "nctvem/analytic.hpp"
#include "nctvem/assembly.hpp"
#include "nctvem/mesh.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace nctvem {

struct PolygonRule
{
    std::vector<Point> points;
    std::vector<double> weights;
};

/// Fan triangulation from `center` with a collapsed Gauss rule of the given order per triangle.
/// Throws MeshError if the polygon is not star-shaped with respect to `center`.
PolygonRule polygon_rule(const std::vector<Point>& polygon, const Point& center, int order = 20);

Complex polygon_quadrature(const std::vector<Point>& polygon, const Point& center,
                           const std::function<Complex(const Point&)>& f, int order = 20);

Complex polygon_quadrature(const PolygonMesh& mesh, int element, const std::function<Complex(const Point&)>& f,
                           int order = 20);

/// Part of a convex or star-shaped polygon with y <= 0 (below) or y >= 0 (above).
std::vector<Point> clip_polygon(const std::vector<Point>& polygon, bool below);

Point polygon_centroid(const std::vector<Point>& polygon);

/// Pi u_h on one element: its wave basis and coefficients.
struct ElementExpansion
{
    const ElementWaveBasis* basis = nullptr;
    CVector coefficients;

    Complex eval(const Point& x) const;
    CVector2 grad(const Point& x) const;
};

std::vector<ElementExpansion> projected_solution(const PolygonMesh& mesh, const DiscreteSolution& solution);

struct ErrorReport
{
    double err_h1_rel = 0;
    double err_l2_rel = 0;
    /// Absolute broken norms of u - Pi u_h and norms of u.
    double err_h1 = 0;
    double err_l2 = 0;
    double norm_h1 = 0;
    double norm_l2 = 0;
    /// Per element squared weighted H1 and L2 error, element wavenumber in the weight.
    std::vector<double> element_h1_sq;
    std::vector<double> element_l2_sq;
};

/// Relative errors in the weighted H1 norm |v|_1^2 + k^2 |v|_0^2 and in L2.
/// The quadrature order per triangle is raised with k times the element diameter.
ErrorReport compute_errors(const PolygonMesh& mesh, const std::vector<ElementExpansion>& uh,
                           const ExactSolution& exact, int order = 20);

/// Samples of Pi u_h and u on an nx x ny grid; CSV x,y,element,re_uh,im_uh,re_u,im_u.
void write_raster(std::ostream& out, const PolygonMesh& mesh, const std::vector<ElementExpansion>& uh,
                  const ExactSolution& exact, int nx, int ny);

} // namespace nctvem
