#pragma once

#include "nctvem/analytic.hpp"
#include "nctvem/mesh.hpp"
#include "nctvem/wave.hpp"

#include <vector>

namespace nctvem {

/// Wavenumber used on elements crossed by the interface.
enum class CutWavenumber { Average, Max };

/// Effective degrees of one element: 2q + 1 plane waves and 2 qt evanescent waves.
struct ElementDegrees
{
    int q = 0;
    int qt = 0;
};

/// Plane waves first, then evanescent waves; all centered at the barycenter.
struct ElementWaveBasis
{
    int element = -1;
    double k = 0;
    Point center = Point::Zero();
    int q = 0;
    int qt = 0;
    std::vector<WaveFunction> waves;

    int size() const { return static_cast<int>(waves.size()); }
};

double element_wavenumber(const PolygonMesh& mesh, int element, const InterfaceProblem& problem,
                          CutWavenumber policy = CutWavenumber::Average);

/// q1 on Omega1, (q2, qt2) on Omega2, max(q1, q2) without evanescent waves on Cut elements.
std::vector<ElementDegrees> constant_degrees(const PolygonMesh& mesh, int q1, int q2, int qt2);

/// Every element gets q = ceil(mu * n_layers).
std::vector<ElementDegrees> uniform_hp_degrees(const PolygonMesh& mesh, double mu);

/// Layer l gets q = ceil(mu * (l + 1)).
std::vector<ElementDegrees> graded_hp_degrees(const PolygonMesh& mesh, double mu);

struct WaveSpaceOptions
{
    CutWavenumber cut = CutWavenumber::Average;
    /// Global rotation of the plane-wave directions, radians.
    double rotation = 0;
};

/// Throws Error if an element ends up without waves or a wave violates the Trefftz identity.
std::vector<ElementWaveBasis> build_element_bases(const PolygonMesh& mesh, const std::vector<ElementDegrees>& degrees,
                                                  const InterfaceProblem& problem, const WaveSpaceOptions& options = {});

ElementWaveBasis make_element_basis(int element, double k, const Point& center, int q, int qt, double n1, double n2,
                                    double rotation = 0);

} // namespace nctvem
