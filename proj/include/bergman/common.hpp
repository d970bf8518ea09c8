#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bergman {

using cdouble = std::complex<double>;

// Points and Jacobians live in C^1 or C^2, so the storage is inline (max 2).
using ComplexPoint = Eigen::Matrix<cdouble, Eigen::Dynamic, 1, 0, 2, 1>;
using SmallMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr const char* kVersion = "1.0.0";

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Raised wherever the kernel value is too small for log-derivatives to make sense.
class KernelNearZero : public Error {
public:
    explicit KernelNearZero(double magnitude)
        : Error("kernel magnitude " + std::to_string(magnitude) + " below guard"), magnitude_(magnitude) {}
    double magnitude() const noexcept { return magnitude_; }

private:
    double magnitude_;
};

inline ComplexPoint make_point(cdouble z1) {
    ComplexPoint p(1);
    p(0) = z1;
    return p;
}

inline ComplexPoint make_point(cdouble z1, cdouble z2) {
    ComplexPoint p(2);
    p << z1, z2;
    return p;
}

inline double max_abs(const ComplexPoint& p) { return p.size() == 0 ? 0.0 : p.cwiseAbs().maxCoeff(); }

template <typename Derived>
double max_abs_entry(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace bergman
