#include "nctvem/analytic.hpp"

#include <cmath>

namespace nctvem {

void InterfaceProblem::validate() const
{
    if (!(k > 0))
        throw ConfigError("wavenumber k must be positive");
    if (!(n2 > 0) || n1 < n2)
        throw ConfigError("refraction indices must satisfy n1 >= n2 > 0");
    if (!(theta_inc > 0 && theta_inc <= pi / 2 + 1e-15))
        throw ConfigError("incidence angle must lie in (0, 90] degrees");
}

double critical_angle(double n1, double n2)
{
    if (!(n2 > 0) || n2 > n1)
        throw Error("critical angle needs n1 >= n2 > 0");
    return std::acos(n2 / n1);
}

SnellCoefficients coefficients(const InterfaceProblem& p)
{
    const double k1 = p.k1(), k2 = p.k2();
    const double c = std::cos(p.theta_inc), s = std::sin(p.theta_inc);
    SnellCoefficients out;
    out.K1 = k1 / k2 * c;
    out.K2 = std::sqrt(Complex(1 - out.K1 * out.K1, 0));
    if (out.K2.imag() < 0)
        out.K2 = -out.K2;
    out.R = (k1 * s - k2 * out.K2) / (k1 * s + k2 * out.K2);
    out.T = 1.0 + out.R;
    return out;
}

ExactSolution::ExactSolution(const InterfaceProblem& problem) : problem_(problem), coeffs_(nctvem::coefficients(problem))
{
    const double c = std::cos(problem.theta_inc), s = std::sin(problem.theta_inc);
    kappa_inc_ = CVector2(problem.k1() * c, problem.k1() * s);
    kappa_ref_ = CVector2(problem.k1() * c, -problem.k1() * s);
    kappa_tr_ = CVector2(problem.k2() * coeffs_.K1, problem.k2() * coeffs_.K2);
}

namespace {

Complex phase(const CVector2& kappa, const Point& x)
{
    return std::exp(Complex(0, 1) * (kappa(0) * x.x() + kappa(1) * x.y()));
}

} // namespace

Complex ExactSolution::eval_below(const Point& x) const
{
    return phase(kappa_inc_, x) + coeffs_.R * phase(kappa_ref_, x);
}

Complex ExactSolution::eval_above(const Point& x) const
{
    return coeffs_.T * phase(kappa_tr_, x);
}

CVector2 ExactSolution::grad_below(const Point& x) const
{
    const Complex i(0, 1);
    return i * phase(kappa_inc_, x) * kappa_inc_ + i * coeffs_.R * phase(kappa_ref_, x) * kappa_ref_;
}

CVector2 ExactSolution::grad_above(const Point& x) const
{
    return Complex(0, 1) * coeffs_.T * phase(kappa_tr_, x) * kappa_tr_;
}

Complex ExactSolution::eval(const Point& x) const
{
    return x.y() > 0 ? eval_above(x) : eval_below(x);
}

CVector2 ExactSolution::grad(const Point& x) const
{
    return x.y() > 0 ? grad_above(x) : grad_below(x);
}

Complex ExactSolution::impedance_datum(const Point& x, const Point& normal) const
{
    const CVector2 g = grad(x);
    return g(0) * normal.x() + g(1) * normal.y() + Complex(0, problem_.wavenumber_at(x)) * eval(x);
}

} // namespace nctvem
