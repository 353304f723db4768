#include "nctvem/wave_space.hpp"

#include <algorithm>
#include <cmath>

namespace nctvem {

double element_wavenumber(const PolygonMesh& mesh, int element, const InterfaceProblem& problem,
                          CutWavenumber policy)
{
    switch (mesh.element(element).subdomain) {
    case Subdomain::Omega1: return problem.k1();
    case Subdomain::Omega2: return problem.k2();
    case Subdomain::Cut:
        return policy == CutWavenumber::Max ? std::max(problem.k1(), problem.k2())
                                            : (problem.k1() + problem.k2()) / 2;
    }
    return 0;
}

std::vector<ElementDegrees> constant_degrees(const PolygonMesh& mesh, int q1, int q2, int qt2)
{
    std::vector<ElementDegrees> out(mesh.n_elements());
    for (int i = 0; i < mesh.n_elements(); ++i) {
        switch (mesh.element(i).subdomain) {
        case Subdomain::Omega1: out[i] = {q1, 0}; break;
        case Subdomain::Omega2: out[i] = {q2, qt2}; break;
        case Subdomain::Cut: out[i] = {std::max(q1, q2), 0}; break;
        }
    }
    return out;
}

std::vector<ElementDegrees> uniform_hp_degrees(const PolygonMesh& mesh, double mu)
{
    if (!(mu > 0))
        throw ConfigError("mu must be positive");
    const int q = static_cast<int>(std::ceil(mu * mesh.n_layers() - 1e-12));
    return std::vector<ElementDegrees>(mesh.n_elements(), ElementDegrees{q, 0});
}

std::vector<ElementDegrees> graded_hp_degrees(const PolygonMesh& mesh, double mu)
{
    if (!(mu > 0))
        throw ConfigError("mu must be positive");
    std::vector<ElementDegrees> out(mesh.n_elements());
    for (int i = 0; i < mesh.n_elements(); ++i)
        out[i].q = static_cast<int>(std::ceil(mu * (mesh.element(i).layer + 1) - 1e-12));
    return out;
}

ElementWaveBasis make_element_basis(int element, double k, const Point& center, int q, int qt, double n1, double n2,
                                    double rotation)
{
    ElementWaveBasis basis;
    basis.element = element;
    basis.k = k;
    basis.center = center;
    basis.q = q;
    basis.qt = qt;
    for (const Point& d : plane_wave_directions(q, rotation))
        basis.waves.push_back(plane_wave(k, d, center));
    // k here is n2 times the base wavenumber, so the base wavenumber is k / n2
    for (const CVector2& d : evanescent_directions(qt, n1, n2)) {
        WaveFunction w;
        w.kappa = (k / n2) * d;
        w.center = center;
        w.k = k;
        basis.waves.push_back(w);
    }
    for (const WaveFunction& w : basis.waves)
        if (w.trefftz_residual() > 1e-12)
            throw Error("wave on element " + std::to_string(element) + " is not a Helmholtz solution");
    return basis;
}

std::vector<ElementWaveBasis> build_element_bases(const PolygonMesh& mesh, const std::vector<ElementDegrees>& degrees,
                                                  const InterfaceProblem& problem, const WaveSpaceOptions& options)
{
    if (static_cast<int>(degrees.size()) != mesh.n_elements())
        throw Error("degree list does not match the mesh");
    std::vector<ElementWaveBasis> out;
    out.reserve(mesh.n_elements());
    for (int i = 0; i < mesh.n_elements(); ++i) {
        const Element& el = mesh.element(i);
        const double k = element_wavenumber(mesh, i, problem, options.cut);
        const int qt = el.subdomain == Subdomain::Omega2 ? degrees[i].qt : 0;
        out.push_back(make_element_basis(i, k, el.barycenter, degrees[i].q, qt, problem.n1, problem.n2,
                                         options.rotation));
        if (out.back().waves.empty())
            throw Error("element " + std::to_string(i) + " has no basis functions");
    }
    return out;
}

} // namespace nctvem
