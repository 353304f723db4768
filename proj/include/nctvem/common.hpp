#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace nctvem {

using Complex = std::complex<double>;
using Point = Eigen::Vector2d;
using CVector2 = Eigen::Vector2cd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Straight segment [a, b].
struct Segment
{
    Point a;
    Point b;

    double length() const { return (b - a).norm(); }
    Point at(double t) const { return a + t * (b - a); }
};

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class MeshError : public Error
{
public:
    using Error::Error;
};

class ConfigError : public Error
{
public:
    using Error::Error;
};

/// Raised when a local or global matrix cannot be inverted reliably.
class SingularMatrixError : public Error
{
public:
    using Error::Error;
};

inline constexpr double pi = 3.14159265358979323846;

} // namespace nctvem
