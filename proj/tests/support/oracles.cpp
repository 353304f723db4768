#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>

namespace oracle {

using nctvem::CMatrix;
using nctvem::Complex;
using nctvem::ElementWaveBasis;
using nctvem::Segment;
using nctvem::WaveFunction;

const Rule& golub_welsch(int n)
{
    static std::map<int, Rule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;

    using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    LMatrix J = LMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const long double b = i / std::sqrt(4.0L * i * i - 1);
        J(i, i - 1) = b;
        J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<LMatrix> es(J);
    Rule r;
    for (int i = 0; i < n; ++i) {
        const long double v0 = es.eigenvectors()(0, i);
        r.nodes.push_back((es.eigenvalues()(i) + 1) / 2);
        r.weights.push_back(v0 * v0);  // weights on [-1, 1] are 2 v0^2, halved for [0, 1]
    }
    return cache.emplace(n, std::move(r)).first->second;
}

LComplex segment_integral(const Segment& s, double oscillation, int n_per_panel,
                          const std::function<LComplex(const Point&)>& f)
{
    const Rule& rule = golub_welsch(n_per_panel);
    const int panels = 1 + static_cast<int>(std::ceil(oscillation / 4));
    const long double h = s.length();
    LComplex sum = 0;
    for (int p = 0; p < panels; ++p) {
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const long double t = (p + rule.nodes[i]) / panels;
            const Point x = s.a + static_cast<double>(t) * (s.b - s.a);
            sum += rule.weights[i] / panels * f(x);
        }
    }
    return h * sum;
}

namespace {

double wave_scale(const WaveFunction& w)
{
    return std::abs(w.kappa(0)) + std::abs(w.kappa(1));
}

LComplex widen(const Complex& z)
{
    return {z.real(), z.imag()};
}

} // namespace

LComplex edge_pair(const WaveFunction& w1, const WaveFunction& w2, const Segment& s)
{
    const double osc = (wave_scale(w1) + wave_scale(w2)) * s.length();
    return segment_integral(s, osc, 24, [&](const Point& x) {
        return w1.eval_as<long double>(x) * std::conj(w2.eval_as<long double>(x));
    });
}

LComplex volume_form(const std::vector<Point>& polygon, const WaveFunction& u, const WaveFunction& v, double k, int n)
{
    ElementWaveBasis basis;
    basis.k = k;
    basis.waves = {u, v};
    const CMatrix g = volume_G(polygon, basis, n);
    return widen(g(1, 0));
}

CMatrix volume_G(const std::vector<Point>& polygon, const ElementWaveBasis& basis, int n)
{
    const int nw = basis.size();
    const Rule& rule = golub_welsch(n);
    Point c = Point::Zero();
    for (const Point& p : polygon)
        c += p;
    c /= static_cast<double>(polygon.size());

    const long double k2 = static_cast<long double>(basis.k) * basis.k;
    std::vector<LComplex> val(nw), gx(nw), gy(nw);
    Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic> g =
        Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>::Zero(nw, nw);
    const LComplex i(0, 1);
    for (size_t e = 0; e < polygon.size(); ++e) {
        const Point& a = polygon[e];
        const Point& b = polygon[(e + 1) % polygon.size()];
        const long double jac = std::abs((a - c).x() * (b - c).y() - (a - c).y() * (b - c).x());
        // Duffy: (s, t) in [0,1]^2 -> c + s (a - c) + s t (b - a), Jacobian s * 2|T|
        for (int is = 0; is < n; ++is) {
            for (int it = 0; it < n; ++it) {
                const long double s = rule.nodes[is];
                const long double t = rule.nodes[it];
                const long double w = rule.weights[is] * rule.weights[it] * s * jac;
                const Point x = c + static_cast<double>(s) * (a - c) + static_cast<double>(s * t) * (b - a);
                for (int l = 0; l < nw; ++l) {
                    const WaveFunction& wl = basis.waves[l];
                    val[l] = wl.eval_as<long double>(x);
                    gx[l] = i * widen(wl.kappa(0)) * val[l];
                    gy[l] = i * widen(wl.kappa(1)) * val[l];
                }
                for (int j = 0; j < nw; ++j)
                    for (int l = 0; l < nw; ++l)
                        g(j, l) += w * (gx[l] * std::conj(gx[j]) + gy[l] * std::conj(gy[j]) -
                                        k2 * val[l] * std::conj(val[j]));
            }
        }
    }
    CMatrix out(nw, nw);
    for (int j = 0; j < nw; ++j)
        for (int l = 0; l < nw; ++l)
            out(j, l) = Complex(static_cast<double>(g(j, l).real()), static_cast<double>(g(j, l).imag()));
    return out;
}

namespace {

double basis_scale(const ElementWaveBasis& basis)
{
    double m = 0;
    for (const WaveFunction& w : basis.waves)
        m = std::max(m, wave_scale(w));
    return m;
}

double edge_scale(const nctvem::OrthogonalEdgeBasis& eb)
{
    double m = 0;
    for (const WaveFunction& w : eb.candidates)
        m = std::max(m, wave_scale(w));
    return m;
}

} // namespace

namespace {

// M(l, a) = int_e w_l conj(w_hat_a). The coefficients of w_hat_a reach 1 / sqrt(sigma),
// so the integrand is formed in quad to keep the cancellation out of the reference value.
Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic> moment_matrix(const ElementWaveBasis& basis,
                                                                     const nctvem::OrthogonalEdgeBasis& eb,
                                                                     const Segment& s)
{
    using nctvem::quad;
    using cquad = std::complex<quad>;
    namespace sc = nctvem::scalar;
    const int nw = basis.size(), rho = eb.n_candidates(), m = eb.dim();
    const double osc = (basis_scale(basis) + edge_scale(eb)) * s.length();
    const Rule& rule = golub_welsch(24);
    const int panels = 1 + static_cast<int>(std::ceil(osc / 4));

    // quadrature points stay exact on the segment: off the edge the combinations
    // w_hat_a grow like |Q|, so rounding a point to double would leak that growth in
    auto eval = [&](const WaveFunction& f, quad t) {
        const cquad k0 = sc::widen<quad>(f.kappa(0)), k1 = sc::widen<quad>(f.kappa(1));
        const quad dx = (static_cast<quad>(s.a.x()) - f.center.x()) + t * (static_cast<quad>(s.b.x()) - s.a.x());
        const quad dy = (static_cast<quad>(s.a.y()) - f.center.y()) + t * (static_cast<quad>(s.b.y()) - s.a.y());
        return sc::cexp(cquad(0, 1) * (k0 * dx + k1 * dy));
    };
    std::vector<cquad> acc(static_cast<size_t>(nw) * m, cquad(0)), nu(rho), hat(m);
    for (int p = 0; p < panels; ++p) {
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const quad t = (p + static_cast<quad>(rule.nodes[i])) / panels;
            const quad wt = static_cast<quad>(rule.weights[i]) / panels;
            for (int r = 0; r < rho; ++r)
                nu[r] = eval(eb.candidates[r], t);
            for (int a = 0; a < m; ++a) {
                cquad sum(0);
                for (int r = 0; r < rho; ++r)
                    sum += sc::widen<quad>(eb.Q(r, a)) * nu[r];
                hat[a] = std::conj(sum);
            }
            for (int l = 0; l < nw; ++l) {
                const cquad wl = eval(basis.waves[l], t) * wt;
                for (int a = 0; a < m; ++a)
                    acc[static_cast<size_t>(l) * m + a] += wl * hat[a];
            }
        }
    }
    Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic> out(nw, m);
    const long double h = s.length();
    for (int l = 0; l < nw; ++l)
        for (int a = 0; a < m; ++a)
            out(l, a) = h * sc::narrow<long double>(acc[static_cast<size_t>(l) * m + a]);
    return out;
}

Complex narrow(const LComplex& z)
{
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

} // namespace

CMatrix quadrature_D(const nctvem::ElementGeometry& geometry, const ElementWaveBasis& basis,
                     const nctvem::LocalEdgeBases& edges)
{
    int nd = 0;
    for (const auto* eb : edges)
        nd += eb->dim();
    CMatrix D(nd, basis.size());
    int row = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
        const auto& eb = *edges[i];
        const Segment& s = geometry.edges[i];
        const auto mom = moment_matrix(basis, eb, s);
        for (int a = 0; a < eb.dim(); ++a)
            for (int l = 0; l < basis.size(); ++l)
                D(row + a, l) = narrow(mom(l, a) / static_cast<long double>(s.length()));
        row += eb.dim();
    }
    return D;
}

CMatrix quadrature_B(const nctvem::ElementGeometry& geometry, const ElementWaveBasis& basis,
                     const nctvem::LocalEdgeBases& edges)
{
    int nd = 0;
    for (const auto* eb : edges)
        nd += eb->dim();
    CMatrix B(basis.size(), nd);
    const LComplex i(0, 1);
    int col = 0;
    for (size_t e = 0; e < edges.size(); ++e) {
        const auto& eb = *edges[e];
        const Segment& s = geometry.edges[e];
        const Point& n = geometry.normals[e];
        const auto mom = moment_matrix(basis, eb, s);
        for (int j = 0; j < basis.size(); ++j) {
            const WaveFunction& wj = basis.waves[j];
            const LComplex kn = widen(wj.kappa(0)) * static_cast<long double>(n.x()) +
                                widen(wj.kappa(1)) * static_cast<long double>(n.y());
            // h int conj(grad w_j . n) w_hat_a = h conj(i kn) conj(M(j, a))
            for (int a = 0; a < eb.dim(); ++a)
                B(j, col + a) = narrow(static_cast<long double>(s.length()) * std::conj(i * kn * mom(j, a)));
        }
        col += eb.dim();
    }
    return B;
}

std::vector<Point> random_convex_polygon(std::mt19937_64& rng, int n_vertices, double radius)
{
    std::uniform_real_distribution<double> angle(0, 2 * nctvem::pi);
    std::uniform_real_distribution<double> shift(-0.5, 0.5);
    const double min_gap = 2 * nctvem::pi / n_vertices / 4;
    for (;;) {
        std::vector<double> t(n_vertices);
        for (double& v : t)
            v = angle(rng);
        std::sort(t.begin(), t.end());
        bool ok = true;
        for (int i = 0; i < n_vertices; ++i) {
            const double gap = i + 1 < n_vertices ? t[i + 1] - t[i] : t[0] + 2 * nctvem::pi - t[i];
            ok = ok && gap > min_gap && gap < nctvem::pi;
        }
        if (!ok)
            continue;
        const Point c(shift(rng), shift(rng));
        std::vector<Point> poly;
        for (double v : t)
            poly.push_back(c + radius * Point(std::cos(v), std::sin(v)));
        return poly;
    }
}

double max_abs(const CMatrix& m)
{
    return m.size() == 0 ? 0 : m.cwiseAbs().maxCoeff();
}

} // namespace oracle
