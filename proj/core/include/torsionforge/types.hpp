#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace torsionforge {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Mat4 = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3cd;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Exit-code contract of the CLI maps onto this hierarchy:
// input problems -> 2, verification failures -> 3, solver failures -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInputError : Error {
    using Error::Error;
};
struct InvalidShapeError : InvalidInputError {
    using InvalidInputError::InvalidInputError;
};
struct DegenerateElementError : InvalidInputError {
    using InvalidInputError::InvalidInputError;
};
struct VerificationError : Error {
    using Error::Error;
};
struct SolverError : Error {
    using Error::Error;
};

inline constexpr double kDefaultTol = 1e-10;

// absolute-or-relative comparison, scaled by max(1,|x|)
inline bool near(double x, double y, double tol = kDefaultTol) {
    return std::abs(x - y) <= tol * std::max(1.0, std::abs(x));
}
inline bool near(Complex x, Complex y, double tol = kDefaultTol) {
    return std::abs(x - y) <= tol * std::max(1.0, std::abs(x));
}

// A nonzero complex number considered modulo sign.
struct TorsionValue {
    Complex value{1.0, 0.0};

    // mod-sign distance, scaled like near()
    static double distance(const TorsionValue& a, const TorsionValue& b) {
        return std::min(std::abs(a.value - b.value), std::abs(a.value + b.value)) /
               std::max(1.0, std::abs(a.value));
    }
    bool equals(const TorsionValue& other, double tol = kDefaultTol) const {
        return distance(*this, other) <= tol;
    }
};

inline TorsionValue operator*(const TorsionValue& a, const TorsionValue& b) {
    return {a.value * b.value};
}
inline TorsionValue operator/(const TorsionValue& a, const TorsionValue& b) {
    return {a.value / b.value};
}

}  // namespace torsionforge
