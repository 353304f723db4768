#pragma once

// Scalar shims so the wave calculus can be instantiated for double,
// long double and __float128 with the same source.

#include <quadmath.h>

#include <cmath>
#include <complex>
#include <vector>

namespace nctvem {

using quad = __float128;

namespace scalar {

inline double exp(double x) { return std::exp(x); }
inline long double exp(long double x) { return std::exp(x); }
inline quad exp(quad x) { return expq(x); }

inline double expm1(double x) { return std::expm1(x); }
inline long double expm1(long double x) { return std::expm1(x); }
inline quad expm1(quad x) { return expm1q(x); }

inline double cos(double x) { return std::cos(x); }
inline long double cos(long double x) { return std::cos(x); }
inline quad cos(quad x) { return cosq(x); }

inline double sin(double x) { return std::sin(x); }
inline long double sin(long double x) { return std::sin(x); }
inline quad sin(quad x) { return sinq(x); }

inline double sqrt(double x) { return std::sqrt(x); }
inline long double sqrt(long double x) { return std::sqrt(x); }
inline quad sqrt(quad x) { return sqrtq(x); }

inline double fabs(double x) { return std::fabs(x); }
inline long double fabs(long double x) { return std::fabs(x); }
inline quad fabs(quad x) { return fabsq(x); }

template <typename Real>
Real abs(const std::complex<Real>& z)
{
    const Real re = z.real();
    const Real im = z.imag();
    return sqrt(re * re + im * im);
}

template <typename Real>
std::complex<Real> cexp(const std::complex<Real>& z)
{
    const Real m = exp(z.real());
    return {m * cos(z.imag()), m * sin(z.imag())};
}

/// e^z - 1 without cancellation for small |z|.
template <typename Real>
std::complex<Real> cexpm1(const std::complex<Real>& z)
{
    const Real x = z.real();
    const Real y = z.imag();
    const Real s = sin(y / Real(2));
    const Real re = expm1(x) * cos(y) - Real(2) * s * s;
    const Real im = exp(x) * sin(y);
    return {re, im};
}

template <typename To, typename From>
std::complex<To> widen(const std::complex<From>& z)
{
    return {static_cast<To>(z.real()), static_cast<To>(z.imag())};
}

template <typename To, typename From>
std::complex<To> narrow(const std::complex<From>& z)
{
    return {static_cast<To>(z.real()), static_cast<To>(z.imag())};
}

} // namespace scalar

/// Row-major dense storage for scalars Eigen has no traits for (quad).
template <typename T>
class DenseArray
{
public:
    DenseArray() = default;
    DenseArray(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

} // namespace nctvem
