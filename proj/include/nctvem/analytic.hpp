#pragma once

#include "nctvem/common.hpp"

namespace nctvem {

/// Plane wave incident from y < 0 on the interface y = 0 between two fluids.
struct InterfaceProblem
{
    double k = 7;
    double n1 = 2;
    double n2 = 1;
    /// Incidence angle in radians, measured from the interface.
    double theta_inc = 75 * pi / 180;

    double k1() const { return n1 * k; }
    double k2() const { return n2 * k; }
    /// Wavenumber of the fluid containing x (the lower one on y = 0).
    double wavenumber_at(const Point& x) const { return x.y() > 0 ? k2() : k1(); }

    void validate() const;
};

double critical_angle(double n1, double n2);

struct SnellCoefficients
{
    double K1 = 0;
    Complex K2;
    Complex R;
    Complex T;
};

SnellCoefficients coefficients(const InterfaceProblem& problem);

/// Exact solution: incident plus reflected wave below y = 0, transmitted wave above.
class ExactSolution
{
public:
    explicit ExactSolution(const InterfaceProblem& problem);

    const InterfaceProblem& problem() const { return problem_; }
    const SnellCoefficients& coefficients() const { return coeffs_; }

    Complex eval(const Point& x) const;
    CVector2 grad(const Point& x) const;

    /// One-sided values; valid on either side including y = 0.
    Complex eval_below(const Point& x) const;
    Complex eval_above(const Point& x) const;
    CVector2 grad_below(const Point& x) const;
    CVector2 grad_above(const Point& x) const;

    /// grad u . n + i k(x) u at a point of the outer boundary.
    Complex impedance_datum(const Point& x, const Point& normal) const;

private:
    InterfaceProblem problem_;
    SnellCoefficients coeffs_;
    CVector2 kappa_inc_;
    CVector2 kappa_ref_;
    CVector2 kappa_tr_;
};

} // namespace nctvem
