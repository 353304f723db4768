#pragma once

#include "nctvem/common.hpp"
#include "nctvem/extended_precision.hpp"

#include <vector>

namespace nctvem {

/// exp(i kappa . (x - center)), a Helmholtz solution for wavenumber k when kappa . kappa = k^2.
struct WaveFunction
{
    CVector2 kappa = CVector2::Zero();
    Point center = Point::Zero();
    double k = 0;

    Complex eval(const Point& x) const;
    CVector2 grad(const Point& x) const;

    template <typename Real>
    std::complex<Real> eval_as(const Point& x) const;

    /// |kappa . kappa - k^2| / k^2 (unconjugated dot product).
    double trefftz_residual() const;
};

/// p = 2q + 1 unit directions at angles rotation + 2 pi l / p; empty for q = 0.
std::vector<Point> plane_wave_directions(int q, double rotation = 0);

/// 2 qt complex directions d with d . d = n2^2, decaying in +y.
std::vector<CVector2> evanescent_directions(int qt, double n1, double n2);

WaveFunction plane_wave(double k, const Point& direction, const Point& center);

/// (e^z - 1) / z with a Taylor branch for |z| < 1e-3.
template <typename Real>
std::complex<Real> phi(const std::complex<Real>& z);

/// Closed form of the integral of w1 * conj(w2) over a segment.
template <typename Real>
std::complex<Real> edge_integral_pair_as(const WaveFunction& w1, const WaveFunction& w2, const Segment& e);

Complex edge_integral_pair(const WaveFunction& w1, const WaveFunction& w2, const Segment& e);

// implementation

template <typename Real>
std::complex<Real> WaveFunction::eval_as(const Point& x) const
{
    using C = std::complex<Real>;
    const Real dx = Real(x.x()) - Real(center.x());
    const Real dy = Real(x.y()) - Real(center.y());
    const C k0 = scalar::widen<Real>(kappa(0));
    const C k1 = scalar::widen<Real>(kappa(1));
    const C arg = C(Real(0), Real(1)) * (k0 * dx + k1 * dy);
    return scalar::cexp(arg);
}

template <typename Real>
std::complex<Real> phi(const std::complex<Real>& z)
{
    using C = std::complex<Real>;
    if (scalar::abs(z) < Real(1e-3)) {
        C sum(0), term(1);
        for (int n = 0; n < 12; ++n) {
            term /= Real(n + 1);
            sum += term;
            term *= z;
        }
        return sum;
    }
    return scalar::cexpm1(z) / z;
}

template <typename Real>
std::complex<Real> edge_integral_pair_as(const WaveFunction& w1, const WaveFunction& w2, const Segment& e)
{
    using C = std::complex<Real>;
    const C i(Real(0), Real(1));
    const Real ax = e.a.x(), ay = e.a.y();
    const Real tx = Real(e.b.x()) - ax, ty = Real(e.b.y()) - ay;
    const Real h = scalar::sqrt(tx * tx + ty * ty);

    const C k1x = scalar::widen<Real>(w1.kappa(0)), k1y = scalar::widen<Real>(w1.kappa(1));
    const C k2x = std::conj(scalar::widen<Real>(w2.kappa(0)));
    const C k2y = std::conj(scalar::widen<Real>(w2.kappa(1)));

    const C z = i * ((k1x - k2x) * tx + (k1y - k2y) * ty);
    const C c = i * (k1x * (ax - Real(w1.center.x())) + k1y * (ay - Real(w1.center.y()))) -
                i * (k2x * (ax - Real(w2.center.x())) + k2y * (ay - Real(w2.center.y())));
    return h * scalar::cexp(c) * phi(z);
}

} // namespace nctvem
