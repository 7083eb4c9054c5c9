#include "torsionforge/hyptrig.hpp"
#include "torsionforge/sampling.hpp"

#include "test_helpers.hpp"

#include <numbers>

using namespace torsionforge;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("dz basics") {
    check_mat_near(dz(Complex(0.0, 0.0)), Mat2::Identity());

    const Mat2 m = dz(Complex(0.0, 2.0 * pi / 4.0));
    check_near(m(0, 0), std::exp(Complex(0.0, pi / 4.0)));
    check_near(m(1, 1), std::exp(Complex(0.0, -pi / 4.0)));
    CHECK(m(0, 1) == Complex(0.0, 0.0));

    ShapeSampler smp(41);
    for (int i = 0; i < 50; ++i) {
        const Complex z = smp.complex_in_box(-3, 3, -3, 3);
        const Complex w = smp.complex_in_box(-3, 3, -3, 3);
        check_mat_near(Mat2(dz(z) * dz(-z)), Mat2::Identity(), 1e-12);
        // one-parameter subgroup, 1e-12 relative
        check_mat_near(Mat2(dz(z) * dz(w)), dz(z + w), 1e-12);
        check_near(dz(z).determinant(), Complex(1.0, 0.0), 1e-12);
    }
}

TEST_CASE("ss basics") {
    check_mat_near(ss(Complex(0.0, 0.0)), Mat2::Identity());

    const Mat2 m = ss(Complex(1.0, 0.0));
    check_near(m(0, 0), 1.1276259652063807, 1e-14);
    check_near(m(0, 1), 0.5210953054937474, 1e-14);

    ShapeSampler smp(42);
    for (int i = 0; i < 50; ++i) {
        const Complex s = smp.complex_in_box(-3, 3, -3, 3);
        const Mat2 a = ss(s);
        check_near(a.determinant(), Complex(1.0, 0.0), 1e-12);
        // symmetric by construction, bitwise
        CHECK(a(0, 1) == a(1, 0));
        const Mat2 b = dz(smp.complex_in_box(-3, 3, -3, 3));
        CHECK(b(0, 1) == b(1, 0));
    }
}

TEST_CASE("triangle_side") {
    // regular pi/4 triangle: cosh s = 1 + sqrt(2)
    const double s = triangle_side(pi / 4, pi / 4, pi / 4);
    check_near(s, 1.5285709194809982, 1e-12);
    check_near(std::cosh(s), 1.0 + std::sqrt(2.0), 1e-12);

    // boundary: angle sum = pi rejected
    CHECK_THROWS_AS(triangle_side(pi / 2, pi / 4, pi / 4), InvalidShapeError);
    CHECK_THROWS_AS(triangle_side(-0.1, 0.3, 0.3), InvalidShapeError);

    // hyperbolic Law of Sine on random valid triangles
    ShapeSampler smp(43);
    for (int i = 0; i < 100; ++i) {
        const PantsGeometry g = smp.pants_cone();
        const double a1 = g.params[0], a2 = g.params[1], a3 = g.params[2];
        const double s1 = triangle_side(a1, a2, a3);
        const double s2 = triangle_side(a2, a1, a3);
        const double s3 = triangle_side(a3, a1, a2);
        const double r1 = std::sinh(s1) / std::sin(a1);
        const double r2 = std::sinh(s2) / std::sin(a2);
        const double r3 = std::sinh(s3) / std::sin(a3);
        check_near(r1, r2, 1e-10);
        check_near(r1, r3, 1e-10);
        // defining equation round-trip
        check_near(std::cosh(s1),
                   (std::cos(a1) + std::cos(a2) * std::cos(a3)) / (std::sin(a2) * std::sin(a3)),
                   1e-12);
    }
}

TEST_CASE("hexagon_side") {
    const double s = hexagon_side(1.0, 1.0, 1.0);
    check_near(std::cosh(s), 2.841347188415585, 1e-12);
    check_near(s, 1.7049128323580138, 1e-12);

    CHECK_THROWS_AS(hexagon_side(0.0, 1.0, 1.0), InvalidShapeError);
    CHECK_THROWS_AS(hexagon_side(1.0, -1.0, 1.0), InvalidShapeError);

    // symmetry in the adjacent sides
    CHECK(hexagon_side(0.7, 1.3, 0.9) == hexagon_side(0.7, 0.9, 1.3));

    // hexagon Law of Sine
    ShapeSampler smp(44);
    for (int i = 0; i < 100; ++i) {
        const double l1 = smp.uniform(0.1, 2.2);
        const double l2 = smp.uniform(0.1, 2.2);
        const double l3 = smp.uniform(0.1, 2.2);
        const double s1 = hexagon_side(l1, l2, l3);
        const double s2 = hexagon_side(l2, l1, l3);
        const double s3 = hexagon_side(l3, l1, l2);
        check_near(std::sinh(s1) / std::sinh(l1), std::sinh(s2) / std::sinh(l2), 1e-10);
        check_near(std::sinh(s2) / std::sinh(l2), std::sinh(s3) / std::sinh(l3), 1e-10);
        check_near(std::cosh(s1),
                   (std::cosh(l1) + std::cosh(l2) * std::cosh(l3)) /
                       (std::sinh(l2) * std::sinh(l3)),
                   1e-12);
    }
}

TEST_CASE("cosh difference identity") {
    // cosh z - cosh z' = 2 sinh((z+z')/2) sinh((z-z')/2), 1e-11 relative
    ShapeSampler smp(45);
    for (int i = 0; i < 1000; ++i) {
        const Complex z = smp.complex_in_box(-3, 3, -3, 3);
        const Complex w = smp.complex_in_box(-3, 3, -3, 3);
        const Complex lhs = std::cosh(z) - std::cosh(w);
        const Complex rhs = 2.0 * std::sinh((z + w) / 2.0) * std::sinh((z - w) / 2.0);
        check_near(lhs, rhs, 1e-11);
    }
}

TEST_CASE("acosh clamp policy") {
    CHECK(acosh_clamped(1.0) == 0.0);
    CHECK(acosh_clamped(1.0 - 1e-13) == 0.0);
    CHECK_THROWS_AS(acosh_clamped(1.0 - 1e-11), InvalidShapeError);
    check_near(acosh_clamped(2.0), std::acosh(2.0), 1e-15);
}
