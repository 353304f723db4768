#include "nctvem/assembly.hpp"

#include "nctvem/quadrature.hpp"

#include <Eigen/LU>
#include <Eigen/SparseLU>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nctvem {

namespace {

using cquad = std::complex<quad>;

Complex normal_flux(const WaveFunction& w, const Point& n)
{
    return Complex(0, 1) * (w.kappa(0) * n.x() + w.kappa(1) * n.y());
}

} // namespace

CMatrix edge_moments(const ElementWaveBasis& basis, const OrthogonalEdgeBasis& edge)
{
    const int nw = basis.size(), rho = edge.n_candidates(), m = edge.dim();
    std::vector<cquad> moments(rho);
    std::vector<cquad> q(static_cast<size_t>(rho) * m);
    for (int r = 0; r < rho; ++r)
        for (int a = 0; a < m; ++a)
            q[static_cast<size_t>(r) * m + a] = std::conj(scalar::widen<quad>(edge.Q(r, a)));

    CMatrix t(nw, m);
    for (int l = 0; l < nw; ++l) {
        for (int r = 0; r < rho; ++r)
            moments[r] = edge_integral_pair_as<quad>(basis.waves[l], edge.candidates[r], edge.segment);
        for (int a = 0; a < m; ++a) {
            cquad s(0);
            for (int r = 0; r < rho; ++r)
                s += moments[r] * q[static_cast<size_t>(r) * m + a];
            t(l, a) = scalar::narrow<double>(s);
        }
    }
    return t;
}

ElementGeometry ElementGeometry::of(const PolygonMesh& mesh, int element)
{
    ElementGeometry g;
    const Element& el = mesh.element(element);
    for (int i = 0; i < el.n_edges(); ++i) {
        g.edges.push_back(mesh.segment(el.edges[i]));
        g.normals.push_back(mesh.outward_normal(element, i));
    }
    return g;
}

ElementGeometry ElementGeometry::of(const std::vector<Point>& polygon)
{
    ElementGeometry g;
    const size_t k = polygon.size();
    for (size_t i = 0; i < k; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % k];
        const Point t = (b - a).normalized();
        g.edges.push_back({a, b});
        g.normals.emplace_back(t.y(), -t.x());
    }
    return g;
}

LocalEdgeBases gather_edge_bases(const PolygonMesh& mesh, int element, const std::vector<OrthogonalEdgeBasis>& edges)
{
    LocalEdgeBases out;
    for (int e : mesh.element(element).edges)
        out.push_back(&edges[e]);
    return out;
}

CMatrix local_G(const ElementGeometry& geometry, const ElementWaveBasis& basis)
{
    const int nw = basis.size();
    ComplexMatrix<long double> g = ComplexMatrix<long double>::Zero(nw, nw);
    for (size_t i = 0; i < geometry.edges.size(); ++i) {
        const Segment& seg = geometry.edges[i];
        for (int j = 0; j < nw; ++j) {
            const auto flux = scalar::widen<long double>(std::conj(normal_flux(basis.waves[j], geometry.normals[i])));
            for (int l = 0; l < nw; ++l)
                g(j, l) += flux * edge_integral_pair_as<long double>(basis.waves[l], basis.waves[j], seg);
        }
    }
    CMatrix out(nw, nw);
    for (int j = 0; j < nw; ++j)
        for (int l = 0; l < nw; ++l)
            out(j, l) = scalar::narrow<double>(g(j, l));
    return out;
}

CMatrix local_G(const PolygonMesh& mesh, int element, const ElementWaveBasis& basis)
{
    return local_G(ElementGeometry::of(mesh, element), basis);
}

namespace {

struct DB
{
    CMatrix D;
    CMatrix B;
};

DB local_DB(const ElementGeometry& geometry, const ElementWaveBasis& basis, const LocalEdgeBases& edges)
{
    const int nw = basis.size();
    int nd = 0;
    for (const OrthogonalEdgeBasis* eb : edges)
        nd += eb->dim();
    DB out{CMatrix(nd, nw), CMatrix(nw, nd)};
    int row = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
        const OrthogonalEdgeBasis& eb = *edges[i];
        const double h = eb.segment.length();
        const Point& n = geometry.normals[i];
        const CMatrix t = edge_moments(basis, eb);
        out.D.middleRows(row, eb.dim()) = t.transpose() / h;
        for (int j = 0; j < nw; ++j)
            out.B.row(j).segment(row, eb.dim()) = std::conj(normal_flux(basis.waves[j], n)) * h * t.row(j).conjugate();
        row += eb.dim();
    }
    return out;
}

} // namespace

CMatrix local_D(const ElementGeometry& geometry, const ElementWaveBasis& basis, const LocalEdgeBases& edges)
{
    return local_DB(geometry, basis, edges).D;
}

CMatrix local_D(const PolygonMesh& mesh, int element, const ElementWaveBasis& basis,
                const std::vector<OrthogonalEdgeBasis>& edges)
{
    return local_D(ElementGeometry::of(mesh, element), basis, gather_edge_bases(mesh, element, edges));
}

CMatrix local_B(const ElementGeometry& geometry, const ElementWaveBasis& basis, const LocalEdgeBases& edges)
{
    return local_DB(geometry, basis, edges).B;
}

CMatrix local_B(const PolygonMesh& mesh, int element, const ElementWaveBasis& basis,
                const std::vector<OrthogonalEdgeBasis>& edges)
{
    return local_B(ElementGeometry::of(mesh, element), basis, gather_edge_bases(mesh, element, edges));
}

Projectors projector_matrices(const CMatrix& G, const CMatrix& B, const CMatrix& D, double max_condition, int element)
{
    // extended precision: plane waves of high degree on small elements make G
    // ill-conditioned in double even though the projector itself is well defined
    using CL = std::complex<long double>;
    const Eigen::PartialPivLU<ComplexMatrix<long double>> lu(G.cast<CL>());
    const double rcond = static_cast<double>(lu.rcond());
    Projectors p;
    p.condition = rcond > 0 ? 1 / rcond : INFINITY;
    if (!(p.condition <= max_condition)) {
        std::ostringstream msg;
        msg << "element " << element << ": local matrix G is numerically singular (condition estimate "
            << std::setprecision(3) << p.condition
            << "); its waves are nearly dependent or the wavenumber is close to a Neumann-Laplace eigenvalue";
        throw SingularMatrixError(msg.str());
    }
    p.PiStar = lu.solve(B.cast<CL>()).cast<Complex>();
    p.Pi = D * p.PiStar;
    return p;
}

Eigen::VectorXd stabilization(const CMatrix& G, const CMatrix& PiStar)
{
    return (PiStar.adjoint() * G * PiStar).diagonal().real();
}

CMatrix element_matrix(const CMatrix& G, const CMatrix& PiStar, const CMatrix& Pi, const Eigen::VectorXd& S)
{
    const CMatrix r = CMatrix::Identity(Pi.rows(), Pi.cols()) - Pi;
    return PiStar.adjoint() * G * PiStar + r.adjoint() * S.cast<Complex>().asDiagonal() * r;
}

LocalElementMatrices local_matrices(const ElementGeometry& geometry, const ElementWaveBasis& basis,
                                    const LocalEdgeBases& edges, double max_condition, int element)
{
    LocalElementMatrices m;
    m.G = local_G(geometry, basis);
    DB db = local_DB(geometry, basis, edges);
    m.D = std::move(db.D);
    m.B = std::move(db.B);
    Projectors p = projector_matrices(m.G, m.B, m.D, max_condition, element);
    m.PiStar = std::move(p.PiStar);
    m.Pi = std::move(p.Pi);
    m.condition = p.condition;
    m.S = stabilization(m.G, m.PiStar);
    m.A = element_matrix(m.G, m.PiStar, m.Pi, m.S);
    return m;
}

LocalElementMatrices local_matrices(const PolygonMesh& mesh, int element, const ElementWaveBasis& basis,
                                    const std::vector<OrthogonalEdgeBasis>& edges, double max_condition)
{
    return local_matrices(ElementGeometry::of(mesh, element), basis, gather_edge_bases(mesh, element, edges),
                          max_condition, element);
}

int rhs_quadrature_points(double k, double h)
{
    return std::max(32, static_cast<int>(std::ceil(3 * k * h)));
}

CVector robin_rhs(const OrthogonalEdgeBasis& edge, const Point& normal, double k, const ImpedanceDatum& g,
                  int n_points)
{
    const Segment& seg = edge.segment;
    const double h = seg.length();
    if (n_points <= 0)
        n_points = rhs_quadrature_points(k, h);
    const LineRule rule = gauss_legendre(n_points);

    // g jumps where the edge crosses the interface
    std::vector<double> breaks{0.0};
    const double ya = seg.a.y(), yb = seg.b.y();
    if ((ya < -geometry_tolerance && yb > geometry_tolerance) || (ya > geometry_tolerance && yb < -geometry_tolerance))
        breaks.push_back(ya / (ya - yb));
    breaks.push_back(1.0);

    CVector f = CVector::Zero(edge.dim());
    ComplexVector<long double> nu(edge.n_candidates());
    for (size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
        const double t0 = breaks[piece], len = breaks[piece + 1] - breaks[piece];
        for (int p = 0; p < rule.size(); ++p) {
            const Point x = seg.at(t0 + len * rule.nodes[p]);
            const Complex gx = g(x, normal) * (rule.weights[p] * len * h);
            for (int r = 0; r < edge.n_candidates(); ++r)
                nu(r) = edge.candidates[r].eval_as<long double>(x);
            const ComplexVector<long double> w = edge.Q.transpose() * nu;
            for (int a = 0; a < edge.dim(); ++a)
                f(a) += gx * std::conj(scalar::narrow<double>(w(a)));
        }
    }
    return h * f;
}

DofMap make_dof_map(const std::vector<OrthogonalEdgeBasis>& edges)
{
    DofMap map;
    map.offset.resize(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        map.offset[e] = map.n_dofs;
        map.n_dofs += edges[e].dim();
    }
    return map;
}

std::vector<int> element_dofs(const PolygonMesh& mesh, int element, const DofMap& dofs,
                              const std::vector<OrthogonalEdgeBasis>& edges)
{
    std::vector<int> out;
    for (int e : mesh.element(element).edges)
        for (int a = 0; a < edges[e].dim(); ++a)
            out.push_back(dofs.global(e, a));
    return out;
}

CVector DiscreteSolution::projected_coefficients(const PolygonMesh& mesh, int element) const
{
    const std::vector<int> idx = element_dofs(mesh, element, dofs, edge_bases);
    CVector local(idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        local(i) = x(idx[i]);
    return locals[element].PiStar * local;
}

DiscreteSolution assemble_and_solve(const PolygonMesh& mesh, std::vector<ElementWaveBasis> element_bases,
                                    const ImpedanceDatum& g, const SolveOptions& options)
{
    DiscreteSolution sol;
    sol.element_bases = std::move(element_bases);
    sol.edge_bases = build_edge_bases(mesh, sol.element_bases, options.sigma);
    sol.dofs = make_dof_map(sol.edge_bases);
    for (const OrthogonalEdgeBasis& eb : sol.edge_bases)
        sol.dofs_raw += eb.n_candidates();

    const int n = sol.dofs.n_dofs;
    std::vector<Eigen::Triplet<Complex>> triplets;
    sol.rhs = CVector::Zero(n);
    sol.locals.reserve(mesh.n_elements());
    for (int e = 0; e < mesh.n_elements(); ++e) {
        sol.locals.push_back(local_matrices(mesh, e, sol.element_bases[e], sol.edge_bases, options.max_condition));
        const CMatrix& a = sol.locals.back().A;
        const std::vector<int> idx = element_dofs(mesh, e, sol.dofs, sol.edge_bases);
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j)
                triplets.emplace_back(idx[i], idx[j], a(i, j));

        const Element& el = mesh.element(e);
        const double k = sol.element_bases[e].k;
        for (int i = 0; i < el.n_edges(); ++i) {
            const int edge = el.edges[i];
            if (!mesh.edge(edge).on_boundary())
                continue;
            const OrthogonalEdgeBasis& eb = sol.edge_bases[edge];
            const double h = eb.segment.length();
            const CVector f = robin_rhs(eb, mesh.outward_normal(e, i), k, g);
            for (int a = 0; a < eb.dim(); ++a) {
                const int gi = sol.dofs.global(edge, a);
                triplets.emplace_back(gi, gi, Complex(0, k * h * h));
                sol.rhs(gi) += f(a);
            }
        }
    }
    sol.matrix.resize(n, n);
    sol.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sol.matrix.makeCompressed();

    Eigen::SparseLU<SparseCMatrix> lu;
    lu.compute(sol.matrix);
    if (lu.info() != Eigen::Success)
        throw SingularMatrixError("global matrix factorization failed: " + lu.lastErrorMessage());
    sol.x = lu.solve(sol.rhs);
    const double fn = sol.rhs.norm();
    sol.residual = (sol.matrix * sol.x - sol.rhs).norm() / (fn > 0 ? fn : 1.0);
    if (!(sol.residual <= options.max_residual)) {
        std::ostringstream msg;
        msg << "global solve residual " << std::setprecision(3) << sol.residual << " exceeds "
            << options.max_residual;
        throw SingularMatrixError(msg.str());
    }
    return sol;
}

void write_system(std::ostream& out, const DiscreteSolution& solution)
{
    out << std::setprecision(17);
    out << "% matrix " << solution.matrix.rows() << ' ' << solution.matrix.cols() << ' ' << solution.matrix.nonZeros()
        << '\n';
    for (int c = 0; c < solution.matrix.outerSize(); ++c)
        for (SparseCMatrix::InnerIterator it(solution.matrix, c); it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
    out << "% rhs " << solution.rhs.size() << '\n';
    for (int i = 0; i < solution.rhs.size(); ++i)
        out << i << ' ' << solution.rhs(i).real() << ' ' << solution.rhs(i).imag() << '\n';
}

void write_dof_map(std::ostream& out, const DiscreteSolution& solution)
{
    out << "edge,local,global\n";
    for (size_t e = 0; e < solution.edge_bases.size(); ++e)
        for (int a = 0; a < solution.edge_bases[e].dim(); ++a)
            out << e << ',' << a << ',' << solution.dofs.global(static_cast<int>(e), a) << '\n';
}

} // namespace nctvem
