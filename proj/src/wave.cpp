#include "nctvem/wave.hpp"

#include <cmath>

namespace nctvem {

Complex WaveFunction::eval(const Point& x) const
{
    const Point d = x - center;
    return std::exp(Complex(0, 1) * (kappa(0) * d.x() + kappa(1) * d.y()));
}

CVector2 WaveFunction::grad(const Point& x) const
{
    return Complex(0, 1) * eval(x) * kappa;
}

double WaveFunction::trefftz_residual() const
{
    // Eigen's dot() conjugates its first argument; the Trefftz identity does not
    const Complex kk = kappa(0) * kappa(0) + kappa(1) * kappa(1);
    return std::abs(kk - k * k) / (k * k);
}

std::vector<Point> plane_wave_directions(int q, double rotation)
{
    std::vector<Point> out;
    if (q <= 0)
        return out;
    const int p = 2 * q + 1;
    for (int l = 0; l < p; ++l) {
        const double a = rotation + 2 * pi * l / p;
        out.emplace_back(std::cos(a), std::sin(a));
    }
    return out;
}

std::vector<CVector2> evanescent_directions(int qt, double n1, double n2)
{
    std::vector<CVector2> out;
    if (qt <= 0)
        return out;
    if (!(n1 > n2 && n2 > 0))
        throw Error("evanescent directions need n1 > n2 > 0");
    const double crit = std::acos(n2 / n1);
    for (int j = 1; j <= 2 * qt; ++j) {
        const double theta = ((j + 1) / 2) * crit / (qt + 1);
        const double c = n1 * std::cos(theta);
        const double sign = j % 2 == 1 ? -1 : 1;
        out.push_back(CVector2(Complex(sign * c, 0), Complex(0, std::sqrt(c * c - n2 * n2))));
    }
    return out;
}

WaveFunction plane_wave(double k, const Point& direction, const Point& center)
{
    WaveFunction w;
    w.kappa = (k * direction).cast<Complex>();
    w.center = center;
    w.k = k;
    return w;
}

Complex edge_integral_pair(const WaveFunction& w1, const WaveFunction& w2, const Segment& e)
{
    return edge_integral_pair_as<double>(w1, w2, e);
}

} // namespace nctvem
