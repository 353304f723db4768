#include "nctvem/edge_basis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace nctvem {

namespace {

using cquad = std::complex<quad>;

const char* kind_name(EdgeKind k)
{
    switch (k) {
    case EdgeKind::Interior: return "interior";
    case EdgeKind::Interface: return "interface";
    case EdgeKind::Boundary: return "boundary";
    }
    return "?";
}

// conj(X)^T G X with G in quad and X in long double
DenseArray<cquad> congruence(const DenseArray<cquad>& g, const ComplexMatrix<long double>& x)
{
    const int n = g.rows(), m = static_cast<int>(x.cols());
    DenseArray<cquad> xq(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            xq(i, j) = scalar::widen<quad>(x(i, j));
    DenseArray<cquad> gx(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            cquad s(0);
            for (int r = 0; r < n; ++r)
                s += g(i, r) * xq(r, j);
            gx(i, j) = s;
        }
    DenseArray<cquad> out(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            cquad s(0);
            for (int r = 0; r < n; ++r)
                s += std::conj(xq(r, a)) * gx(r, b);
            out(a, b) = s;
        }
    return out;
}

} // namespace

std::vector<EdgeCandidateSet> build_candidates(const PolygonMesh& mesh, const std::vector<ElementWaveBasis>& bases)
{
    if (static_cast<int>(bases.size()) != mesh.n_elements())
        throw Error("element bases do not match the mesh");
    std::vector<EdgeCandidateSet> out(mesh.n_edges());
    for (int e = 0; e < mesh.n_edges(); ++e) {
        out[e].edge = e;
        for (int el : mesh.edge(e).elements) {
            if (el < 0)
                continue;
            if (bases[el].waves.empty())
                throw Error("element " + std::to_string(el) + " has no basis");
            for (const WaveFunction& w : bases[el].waves)
                out[e].candidates.push_back({el, w});
        }
    }
    return out;
}

DenseArray<cquad> edge_gram(const std::vector<WaveFunction>& waves, const Segment& segment)
{
    const int n = static_cast<int>(waves.size());
    DenseArray<cquad> g(n, n);
    for (int s = 0; s < n; ++s)
        for (int r = 0; r < n; ++r)
            g(s, r) = edge_integral_pair_as<quad>(waves[r], waves[s], segment);
    return g;
}

OrthogonalEdgeBasis orthogonalize_filter(const std::vector<WaveFunction>& candidates, const Segment& segment,
                                         double sigma, int edge)
{
    if (!(sigma > 0))
        throw Error("filter tolerance must be positive");
    const std::string where = "edge " + std::to_string(edge);
    const int rho = static_cast<int>(candidates.size());
    if (rho == 0)
        throw Error(where + " has no candidate traces");

    using LMatrix = ComplexMatrix<long double>;
    const DenseArray<cquad> g0 = edge_gram(candidates, segment);
    LMatrix g(rho, rho);
    for (int i = 0; i < rho; ++i)
        for (int j = 0; j < rho; ++j)
            g(i, j) = scalar::narrow<long double>(g0(i, j));
    const long double scale = g.cwiseAbs().maxCoeff();
    const long double asym = (g - g.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12L * scale)
        throw Error(where + ": Gram matrix is not Hermitian");
    g = (g + g.adjoint()).eval() / 2.0L;

    Eigen::SelfAdjointEigenSolver<LMatrix> es(g);
    if (es.info() != Eigen::Success)
        throw Error(where + ": Gram eigendecomposition failed");
    const auto& lambda = es.eigenvalues();

    std::vector<int> keep;
    // negative eigenvalues of the positive semidefinite Gram matrix are rounding noise
    for (int i = 0; i < rho; ++i)
        if (lambda(i) > sigma)
            keep.push_back(i);
    if (keep.empty())
        throw Error(where + ": every candidate trace was filtered, the tolerance is too large");

    const int m = static_cast<int>(keep.size());
    LMatrix q(rho, m);
    for (int j = 0; j < m; ++j)
        q.col(j) = es.eigenvectors().col(keep[j]) / std::sqrt(lambda(keep[j]));

    // eigenvectors of small eigenvalues carry errors of order eps |G0| / lambda; re-orthonormalize
    // against the quad Gram matrix until the defect reaches long double rounding
    for (int pass = 0; pass < 4; ++pass) {
        LMatrix h(m, m);
        const DenseArray<cquad> hq = congruence(g0, q);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                h(i, j) = scalar::narrow<long double>(hq(i, j));
        h = (h + h.adjoint()).eval() / 2.0L;
        if ((h - LMatrix::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-17L)
            break;
        Eigen::SelfAdjointEigenSolver<LMatrix> hs(h);
        q = (q * hs.operatorInverseSqrt()).eval();
    }

    OrthogonalEdgeBasis basis;
    basis.edge = edge;
    basis.segment = segment;
    basis.candidates = candidates;
    basis.Q = q;
    for (int i : keep)
        basis.eigenvalues.push_back(static_cast<double>(lambda(i)));
    basis.n_dropped = rho - m;
    return basis;
}

OrthogonalEdgeBasis orthogonalize_filter(const EdgeCandidateSet& set, const Segment& segment, double sigma)
{
    std::vector<WaveFunction> waves;
    for (const EdgeCandidate& c : set.candidates)
        waves.push_back(c.wave);
    return orthogonalize_filter(waves, segment, sigma, set.edge);
}

double orthonormality_defect(const OrthogonalEdgeBasis& basis)
{
    const DenseArray<cquad> m = congruence(edge_gram(basis.candidates, basis.segment), basis.Q);
    quad worst = 0;
    for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b) {
            const cquad d = m(a, b) - cquad(a == b ? 1 : 0);
            worst = std::max(worst, scalar::abs(d));
        }
    return static_cast<double>(worst);
}

std::vector<OrthogonalEdgeBasis> build_edge_bases(const PolygonMesh& mesh, const std::vector<ElementWaveBasis>& bases,
                                                  double sigma)
{
    const std::vector<EdgeCandidateSet> sets = build_candidates(mesh, bases);
    std::vector<OrthogonalEdgeBasis> out;
    out.reserve(sets.size());
    for (const EdgeCandidateSet& s : sets)
        out.push_back(orthogonalize_filter(s, mesh.segment(s.edge), sigma));
    return out;
}

void write_edge_diagnostics(std::ostream& out, const PolygonMesh& mesh, const std::vector<OrthogonalEdgeBasis>& bases)
{
    out << "edge,kind,rho,p_hat,dropped,lambda_min,lambda_max\n";
    out << std::setprecision(6);
    for (const OrthogonalEdgeBasis& b : bases) {
        out << b.edge << ',' << kind_name(mesh.edge(b.edge).kind) << ',' << b.n_candidates() << ',' << b.dim() << ','
            << b.n_dropped << ',' << b.eigenvalues.front() << ',' << b.eigenvalues.back() << '\n';
    }
}

} // namespace nctvem
