#include "nctvem/wave.hpp"
#include "nctvem/wave_space.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nctvem;

TEST_CASE("plane wave directions: 2q+1 unit vectors, none for q = 0")
{
    CHECK(plane_wave_directions(0).empty());
    for (int q = 1; q <= 8; ++q) {
        const auto d = plane_wave_directions(q, 0.3);
        REQUIRE(static_cast<int>(d.size()) == 2 * q + 1);
        for (size_t l = 0; l < d.size(); ++l) {
            CHECK(d[l].norm() == doctest::Approx(1.0));
            const double a = 0.3 + 2 * pi * l / d.size();
            CHECK(d[l].x() == doctest::Approx(std::cos(a)));
            CHECK(d[l].y() == doctest::Approx(std::sin(a)));
        }
    }
}

TEST_CASE("evanescent directions square to n2^2, alternate sign and decay upward")
{
    const double n1 = 2, n2 = 1;
    const double crit = std::acos(n2 / n1);
    for (int qt = 1; qt <= 5; ++qt) {
        const auto d = evanescent_directions(qt, n1, n2);
        REQUIRE(static_cast<int>(d.size()) == 2 * qt);
        for (int j = 1; j <= 2 * qt; ++j) {
            const CVector2& v = d[j - 1];
            const Complex dd = v(0) * v(0) + v(1) * v(1);
            CHECK(std::abs(dd - n2 * n2) < 1e-14);
            const double theta = std::ceil(j / 2.0) * crit / (qt + 1);
            CHECK(v(0).real() == doctest::Approx((j % 2 ? -1 : 1) * n1 * std::cos(theta)));
            CHECK(v(0).imag() == 0);
            CHECK(v(1).real() == 0);
            CHECK(v(1).imag() > 0);
        }
    }
    CHECK_THROWS_AS(evanescent_directions(2, 1, 2), Error);
}

TEST_CASE("every basis wave satisfies the Trefftz identity")
{
    for (double k : {0.5, 7.0, 14.0, 40.0}) {
        const ElementWaveBasis b = make_element_basis(0, k, Point(0.2, -0.1), 6, 4, 2, 1);
        CHECK(b.size() == 13 + 8);
        for (const WaveFunction& w : b.waves)
            CHECK(w.trefftz_residual() < 1e-12);
    }
}

TEST_CASE("evaluation, gradient and extended precision evaluation agree")
{
    const ElementWaveBasis b = make_element_basis(0, 9.0, Point(0.3, 0.4), 3, 2, 2, 1);
    const Point x(0.1, 0.7);
    for (const WaveFunction& w : b.waves) {
        const Complex v = w.eval(x);
        const auto vl = w.eval_as<long double>(x);
        CHECK(std::abs(v - Complex(static_cast<double>(vl.real()), static_cast<double>(vl.imag()))) < 1e-13 * std::abs(v));
        const CVector2 g = w.grad(x);
        // finite difference of the unconjugated exponent
        const double eps = 1e-6;
        const Complex fx = (w.eval(x + Point(eps, 0)) - w.eval(x - Point(eps, 0))) / (2 * eps);
        const Complex fy = (w.eval(x + Point(0, eps)) - w.eval(x - Point(0, eps))) / (2 * eps);
        CHECK(std::abs(g(0) - fx) < 1e-6 * std::abs(v) * 9);
        CHECK(std::abs(g(1) - fy) < 1e-6 * std::abs(v) * 9);
    }
}

TEST_CASE("phi branches meet at the Taylor switch")
{
    for (double r : {0.999e-3, 1.001e-3, 1e-8, 0.5, 3.0}) {
        for (double a : {0.0, 1.0, 2.5, -2.0}) {
            const std::complex<long double> z(r * std::cos(a), r * std::sin(a));
            // long double series; the direct quotient cancels for small |z|
            std::complex<long double> ref(0), term(1);
            for (int n = 1; n < 80; ++n) {
                term /= static_cast<long double>(n);
                ref += term;
                term *= z;
            }
            const auto v = phi(Complex(static_cast<double>(z.real()), static_cast<double>(z.imag())));
            CHECK(std::abs(std::complex<long double>(v.real(), v.imag()) - ref) < 1e-15L * std::abs(ref));
        }
    }
}

TEST_CASE("closed-form edge integral matches quadrature, including equal and evanescent waves")
{
    const Segment s{Point(-0.3, 0.1), Point(0.4, 0.6)};
    const ElementWaveBasis b = make_element_basis(0, 11.0, Point(0, 0.2), 4, 2, 2, 1);
    for (const WaveFunction& w1 : b.waves)
        for (const WaveFunction& w2 : b.waves) {
            const Complex c = edge_integral_pair(w1, w2, s);
            const auto o = oracle::edge_pair(w1, w2, s);
            const double scale = s.length() * std::max(1.0, std::abs(c));
            CHECK(std::abs(c - Complex(static_cast<double>(o.real()), static_cast<double>(o.imag()))) < 1e-12 * scale);
        }
    // identical waves: |w|^2 integrates to the length
    const WaveFunction w = plane_wave(5, Point(1, 0), Point(0, 0));
    CHECK(std::abs(edge_integral_pair(w, w, s) - s.length()) < 1e-14);
}

TEST_CASE("quad precision edge integrals agree with double away from cancellation")
{
    const Segment s{Point(0, 0), Point(0.05, 0.02)};
    const WaveFunction a = plane_wave(14, Point(1, 0), Point(0, 0));
    const WaveFunction b = plane_wave(14, Point(std::cos(1e-4), std::sin(1e-4)), Point(0, 0));
    const auto q = edge_integral_pair_as<quad>(a, b, s);
    const Complex d = edge_integral_pair(a, b, s);
    CHECK(std::abs(d - Complex(static_cast<double>(q.real()), static_cast<double>(q.imag()))) < 1e-15);
}
