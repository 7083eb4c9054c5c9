#include "torsionforge/hyptrig.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace torsionforge {

namespace {

void require_finite(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream os;
        os << what << ": non-finite argument";
        throw InvalidInputError(os.str());
    }
}

}  // namespace

Mat2 dz(Complex z) {
    require_finite(z, "dz");
    Mat2 m;
    const Complex e = std::exp(z / 2.0);
    m << e, 0.0, 0.0, 1.0 / e;
    return m;
}

Mat2 ss(Complex s) {
    require_finite(s, "ss");
    Mat2 m;
    const Complex c = std::cosh(s / 2.0);
    const Complex sh = std::sinh(s / 2.0);
    m << c, sh, sh, c;
    return m;
}

double acosh_clamped(double x) {
    if (x < 1.0 - 1e-12) {
        std::ostringstream os;
        os << "acosh: argument " << x << " below 1";
        throw InvalidShapeError(os.str());
    }
    return std::acosh(std::max(x, 1.0));
}

double triangle_side(double alpha_opposite, double alpha_adj1, double alpha_adj2) {
    constexpr double pi = std::numbers::pi;
    const double a[3] = {alpha_opposite, alpha_adj1, alpha_adj2};
    for (double x : a) {
        if (!(x > 0.0 && x < pi))
            throw InvalidShapeError("triangle_side: angle outside (0,pi)");
    }
    if (!(a[0] + a[1] + a[2] < pi))
        throw InvalidShapeError("triangle_side: angle sum >= pi, no hyperbolic triangle");
    const double num = std::cos(alpha_opposite) + std::cos(alpha_adj1) * std::cos(alpha_adj2);
    const double den = std::sin(alpha_adj1) * std::sin(alpha_adj2);
    return acosh_clamped(num / den);
}

double hexagon_side(double l_opposite, double l_adj1, double l_adj2) {
    if (!(l_opposite > 0.0 && l_adj1 > 0.0 && l_adj2 > 0.0))
        throw InvalidShapeError("hexagon_side: side lengths must be positive");
    const double num = std::cosh(l_opposite) + std::cosh(l_adj1) * std::cosh(l_adj2);
    const double den = std::sinh(l_adj1) * std::sinh(l_adj2);
    return acosh_clamped(num / den);
}

Complex triangle_side_c(Complex alpha_opposite, Complex alpha_adj1, Complex alpha_adj2) {
    const Complex num = std::cos(alpha_opposite) + std::cos(alpha_adj1) * std::cos(alpha_adj2);
    const Complex den = std::sin(alpha_adj1) * std::sin(alpha_adj2);
    return std::acosh(num / den);
}

Complex hexagon_side_c(Complex l_opposite, Complex l_adj1, Complex l_adj2) {
    const Complex num = std::cosh(l_opposite) + std::cosh(l_adj1) * std::cosh(l_adj2);
    const Complex den = std::sinh(l_adj1) * std::sinh(l_adj2);
    return std::acosh(num / den);
}

}  // namespace torsionforge
