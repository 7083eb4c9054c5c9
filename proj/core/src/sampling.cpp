#include "torsionforge/sampling.hpp"

#include <cmath>
#include <numbers>

namespace torsionforge {

namespace {
constexpr double pi = std::numbers::pi;
}

double ShapeSampler::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng_);
}

Complex ShapeSampler::complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
}

PantsGeometry ShapeSampler::pants_cone() {
    for (;;) {
        const double a1 = uniform(0.08, 0.9 * pi);
        const double a2 = uniform(0.08, 0.9 * pi);
        const double a3 = uniform(0.08, 0.9 * pi);
        if (a1 + a2 + a3 < pi - 0.05) return PantsGeometry::cone(a1, a2, a3);
    }
}

PantsGeometry ShapeSampler::pants_boundary() {
    // lower cutoff keeps the seam lengths (and with them the matrix norms of
    // the twisted boundary) in a well-conditioned range
    return PantsGeometry::boundary(uniform(0.3, 2.2), uniform(0.3, 2.2), uniform(0.3, 2.2));
}

TetShape ShapeSampler::fsl_angles() {
    for (;;) {
        std::array<double, 6> a{};
        for (double& x : a) x = uniform(0.08, 1.2);
        const TetShape shape = TetShape::from_angles(a);
        const HyperidealCheck chk = validate_hyperideal(shape);
        if (!chk.valid) continue;
        // keep a margin from the ideal degeneration
        bool ok = true;
        for (int v = 1; v <= 4 && ok; ++v) {
            double sum = 0.0;
            for (int i = 0; i < 6; ++i) {
                const auto [j, k] = kPairs[i];
                if (j != v && k != v) sum += a[i];
            }
            ok = sum < pi - 0.03;
        }
        if (ok) return shape;
    }
}

TetShape ShapeSampler::dual_lengths() {
    // rejection keeps every dihedral-angle cosine inside (-0.98, 0.98):
    // realizable and bounded away from degeneration
    for (;;) {
        std::array<double, 6> l{};
        for (double& x : l) x = uniform(0.25, 2.0);
        const TetShape shape = TetShape::from_lengths(l);
        const Mat4 g = gram(shape);
        bool ok = true;
        for (const auto& [j, k] : kPairs) {
            const auto [cs, ct] = complementary_pair(j, k);
            const double gst = gram_cofactor(g, cs, ct).real();
            const double gss = gram_cofactor(g, cs, cs).real();
            const double gtt = gram_cofactor(g, ct, ct).real();
            if (!(gss * gtt > 0.0) || std::abs(gst / std::sqrt(gss * gtt)) > 0.98) {
                ok = false;
                break;
            }
        }
        if (ok) return shape;
    }
}

Mat2 ShapeSampler::sl2() {
    // exponential of a random traceless matrix
    Mat2 x;
    const Complex a = complex_in_box(-0.8, 0.8, -0.8, 0.8);
    const Complex b = complex_in_box(-0.8, 0.8, -0.8, 0.8);
    const Complex c = complex_in_box(-0.8, 0.8, -0.8, 0.8);
    x << a, b, c, -a;
    // closed-form exp for traceless 2x2: exp(X) = cosh(m) I + sinh(m)/m X,
    // m^2 = det(-X) = a^2 + bc
    const Complex m2 = a * a + b * c;
    const Complex m = std::sqrt(m2);
    Complex ch, shm;
    if (std::abs(m) < 1e-8) {
        ch = 1.0 + m2 / 2.0;
        shm = 1.0 + m2 / 6.0;
    } else {
        ch = std::cosh(m);
        shm = std::sinh(m) / m;
    }
    return Mat2(ch * Mat2::Identity() + shm * x);
}

}  // namespace torsionforge
