#include "torsionforge/rep.hpp"

#include "torsionforge/hyptrig.hpp"
#include "torsionforge/linalg.hpp"
#include "torsionforge/sampling.hpp"

#include "test_helpers.hpp"

#include <numbers>

using namespace torsionforge;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("sym2 basics") {
    check_mat_near(sym2(Mat2::Identity()), Mat3::Identity());
    check_mat_near(sym2(Mat2(-Mat2::Identity())), Mat3::Identity());

    ShapeSampler smp(60);
    for (int i = 0; i < 100; ++i) {
        const Mat2 a = smp.sl2();
        const Mat2 b = smp.sl2();
        // homomorphism killing the center
        check_mat_near(Mat3(sym2(a) * sym2(b)), sym2(Mat2(a * b)), 1e-11);
        check_mat_near(sym2(Mat2(-a)), sym2(a), 1e-13);
        check_near(sym2(a).determinant(), Complex(1.0, 0.0), 1e-10);
    }
    Mat2 notsl;
    notsl << 2.0, 0.0, 0.0, 2.0;
    CHECK_THROWS_AS(sym2(notsl), InvalidInputError);
}

TEST_CASE("invariant_vector") {
    // rotation: I = (0,1,0)
    const Vec3 i1 = invariant_vector(dz(Complex(0.0, 2.0 * 0.7)));
    check_near(i1(0), Complex(0.0, 0.0), 1e-12);
    check_near(i1(1), Complex(1.0, 0.0), 1e-12);
    check_near(i1(2), Complex(0.0, 0.0), 1e-12);

    // conjugated translation: matches the middle-column pattern
    // (-1/2 sinh s, cosh s, -1/2 sinh s) up to the canonical sign
    const double s = 0.9, l = 0.6;
    const Mat2 m = ss(s).inverse() * dz(2.0 * l) * ss(s);
    const Vec3 iv = invariant_vector(m);
    Vec3 expect;
    expect << -0.5 * std::sinh(s), std::cosh(s), -0.5 * std::sinh(s);
    check_mat_mod_sign(iv, expect, 1e-12);

    // fixed by sym2, and the fixed space is 1-dimensional
    ShapeSampler smp(61);
    for (int i = 0; i < 100; ++i) {
        const Mat2 g = smp.sl2();
        if (std::abs(g.trace() * g.trace() - 4.0) < 1e-3) continue;
        const Vec3 v = invariant_vector(g);
        check_mat_near(Vec(sym2(g) * v), Vec(v), 1e-10);
        const Mat fixed = Mat(sym2(g)) - Mat(Mat3::Identity());
        CHECK(linalg::rank(fixed) == 2);
    }

    CHECK_THROWS_AS(invariant_vector(Mat2::Identity()), DegenerateElementError);
    Mat2 parabolic;
    parabolic << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(invariant_vector(parabolic), DegenerateElementError);
}

TEST_CASE("pants holonomy, cone type") {
    const PantsGeometry g = PantsGeometry::cone(0.7, 0.5, 0.9);
    const PantsHolonomy h = pants_holonomy(g);

    // both factorizations agree up to sign
    check_mat_mod_sign(h.g[1], h.g2_alt, 1e-9);
    check_mat_mod_sign(h.g[2], h.g3_alt, 1e-9);
    // group relation gamma_1 gamma_2 gamma_3 = +-1
    check_mat_mod_sign(Mat2(h.g[0] * h.g[1] * h.g[2]), Mat2::Identity(), 1e-10);
    // traces are the rotation angles
    for (int k = 0; k < 3; ++k)
        check_mod_sign(h.g[k].trace(), 2.0 * std::cos(g.params[k]), 1e-11);

    // invariant vectors of the transposes match the closed forms
    const Vec3 i2 = invariant_vector(h.g[1].transpose());
    Vec3 i2p;
    i2p << -0.5 * std::exp(Complex(0, g.params[0])) * std::sinh(h.seam[2]),
        std::cosh(h.seam[2]), -0.5 * std::exp(Complex(0, -g.params[0])) * std::sinh(h.seam[2]);
    check_mat_mod_sign(i2, i2p, 1e-11);
}

TEST_CASE("pants holonomy, boundary type") {
    const PantsGeometry g = PantsGeometry::boundary(0.8, 1.1, 0.6);
    const PantsHolonomy h = pants_holonomy(g);
    check_mat_mod_sign(h.g[1], h.g2_alt, 1e-9);
    check_mat_mod_sign(h.g[2], h.g3_alt, 1e-9);
    check_mat_mod_sign(Mat2(h.g[0] * h.g[1] * h.g[2]), Mat2::Identity(), 1e-10);
    for (int k = 0; k < 3; ++k)
        check_mod_sign(h.g[k].trace(), 2.0 * std::cosh(g.params[k]), 1e-11);
}

TEST_CASE("pants holonomy relations on random geometries") {
    ShapeSampler smp(62);
    for (int i = 0; i < 50; ++i) {
        const PantsGeometry g = (i % 2 == 0) ? smp.pants_cone() : smp.pants_boundary();
        const PantsHolonomy h = pants_holonomy(g);
        check_mat_mod_sign(Mat2(h.g[0] * h.g[1]), Mat2(h.g[2].inverse()), 1e-9);
        // invariant vectors are fixed by the adjoint transpose
        for (int k = 0; k < 3; ++k) {
            const Vec3 iv = invariant_vector(h.g[k].transpose());
            check_mat_near(Vec(adjoint_transpose(h.g[k]) * iv), Vec(iv), 1e-10);
        }
    }
}

TEST_CASE("pants invariant-vector determinants") {
    ShapeSampler smp(63);
    for (int i = 0; i < 50; ++i) {
        SUBCASE("") {}
        const bool cone = (i % 2 == 0);
        const PantsGeometry g = cone ? smp.pants_cone() : smp.pants_boundary();
        const PantsHolonomy h = pants_holonomy(g);
        Mat iv(3, 3);
        for (int k = 0; k < 3; ++k) iv.col(k) = invariant_vector(h.g[k].transpose());
        const Complex det = linalg::determinant(iv);
        const double s1 = h.seam[0], s2 = h.seam[1], s3 = h.seam[2];
        // (1): det[I1,I2,I3] closed forms
        const Complex expect1 =
            cone ? Complex(0.0, -0.5) * std::sin(g.params[0]) * std::sinh(s2) * std::sinh(s3)
                 : Complex(-0.5 * std::sinh(g.params[0]) * std::sinh(s2) * std::sinh(s3), 0.0);
        check_mod_sign(det, expect1, 1e-9);

        // (2): difference-vector determinant
        const Mat3 w3 = adjoint_transpose(Mat2(h.g[2].inverse()));
        const Mat3 w2 = adjoint_transpose(h.g[1]);
        Mat diff(3, 3);
        diff.col(0) = iv.col(0) - w3 * Vec3(iv.col(0));
        diff.col(1) = iv.col(1) - w3 * Vec3(iv.col(1));
        diff.col(2) = iv.col(2) - w2 * Vec3(iv.col(2));
        const Complex det5 = linalg::determinant(diff);
        const Complex expect5 =
            cone ? Complex(0.0, 4.0) * std::sin(g.params[0]) * std::sin(g.params[1]) *
                       std::pow(std::sin(g.params[2]), 3) * std::pow(std::sinh(s1), 2) *
                       std::pow(std::sinh(s2), 2)
                 : Complex(4.0 * std::sinh(g.params[0]) * std::pow(std::sinh(g.params[1]), 3) *
                               std::sinh(g.params[2]) * std::pow(std::sinh(s1), 2) *
                               std::pow(std::sinh(s3), 2),
                           0.0);
        check_mod_sign(det5, expect5, 1e-9);
    }
}

TEST_CASE("block holonomy, fsl") {
    ShapeSampler smp(64);
    for (int i = 0; i < 25; ++i) {
        const BlockGeometry g = BlockGeometry::fsl(smp.fsl_angles());
        const BlockHolonomy h = block_holonomy(g);
        auto a = [&](int j, int k) { return g.shape.angle(j, k); };

        check_mat_mod_sign(h.g[pair_index(1, 4)], h.g14_alt, 1e-9);
        for (const auto& [j, k] : kPairs) {
            const Complex tr = h.g[pair_index(j, k)].trace();
            check_mod_sign(tr, 2.0 * std::cos(a(j, k)), 1e-9);
        }
        // spine relation gamma_12 gamma_23 = +-gamma_13
        check_mat_mod_sign(Mat2(h.g[pair_index(1, 2)] * h.g[pair_index(2, 3)]),
                           h.g[pair_index(1, 3)], 1e-9);
        // invariant vectors fixed under the corresponding spine words
        const Vec3 i14 = invariant_vector(h.g[pair_index(1, 4)].transpose());
        const Mat2 w14 = h.g[pair_index(1, 3)] * h.spine_words[3].inverse();
        check_mat_near(Vec(adjoint_transpose(w14) * i14), Vec(i14), 1e-9);
        const Vec3 i24 = invariant_vector(h.g[pair_index(2, 4)].transpose());
        const Mat2 w24 = h.g[pair_index(2, 3)] * h.spine_words[3].inverse();
        check_mat_near(Vec(adjoint_transpose(w24) * i24), Vec(i24), 1e-9);
    }
}

TEST_CASE("block holonomy, dual") {
    ShapeSampler smp(65);
    for (int i = 0; i < 25; ++i) {
        const BlockGeometry g = BlockGeometry::dual(smp.dual_lengths());
        const BlockHolonomy h = block_holonomy(g);
        auto l = [&](int j, int k) { return g.shape.length(j, k); };

        check_mat_mod_sign(h.g[pair_index(1, 4)], h.g14_alt, 1e-9);
        for (const auto& [j, k] : kPairs) {
            const Complex tr = h.g[pair_index(j, k)].trace();
            check_mod_sign(tr, 2.0 * std::cosh(l(j, k)), 1e-9);
        }
        check_mat_mod_sign(Mat2(h.g[pair_index(1, 2)] * h.g[pair_index(2, 3)]),
                           h.g[pair_index(1, 3)], 1e-9);
    }
}

TEST_CASE("block invariant vectors are fixed points") {
    ShapeSampler smp(67);
    for (int i = 0; i < 10; ++i) {
        const BlockGeometry g = (i % 2 == 0) ? BlockGeometry::fsl(smp.fsl_angles())
                                             : BlockGeometry::dual(smp.dual_lengths());
        const BlockHolonomy h = block_holonomy(g);
        for (int q = 0; q < 6; ++q) {
            const Vec3 iv = invariant_vector(h.g[q].transpose());
            check_mat_near(Vec(adjoint_transpose(h.g[q]) * iv), Vec(iv), 1e-10);
        }
    }
}

TEST_CASE("regular fsl block traces") {
    const BlockGeometry g =
        BlockGeometry::fsl(TetShape::from_angles({pi / 4, pi / 4, pi / 4, pi / 4, pi / 4, pi / 4}));
    const BlockHolonomy h = block_holonomy(g);
    for (int i = 0; i < 6; ++i)
        check_mod_sign(h.g[i].trace(), 2.0 * std::cos(pi / 4), 1e-10);
}

TEST_CASE("block invariant-vector determinants") {
    ShapeSampler smp(66);
    auto det3 = [](const Vec3& a, const Vec3& b, const Vec3& c) {
        Mat m(3, 3);
        m.col(0) = a;
        m.col(1) = b;
        m.col(2) = c;
        return linalg::determinant(m);
    };
    for (int i = 0; i < 30; ++i) {
        SUBCASE("") {}
        const bool fsl = (i % 2 == 0);
        const BlockGeometry g = fsl ? BlockGeometry::fsl(smp.fsl_angles())
                                    : BlockGeometry::dual(smp.dual_lengths());
        const BlockHolonomy h = block_holonomy(g);
        std::array<Vec3, 6> iv;
        for (int q = 0; q < 6; ++q) iv[q] = invariant_vector(h.g[q].transpose());
        auto I = [&](int j, int k) { return iv[pair_index(j, k)]; };
        auto sh = [&](int j, int k) { return std::sinh(h.short_edge[j][k]); };
        const Complex i_unit(0.0, 1.0);

        // the four 3x3 determinants: (det2)/(det3) resp. (ldet2)/(ldet3)
        if (fsl) {
            auto lval = [&](int j, int k) { return h.derived[pair_index(j, k)]; };
            check_mod_sign(det3(I(1, 2), I(1, 3), I(1, 4)),
                           -0.5 * std::sinh(lval(1, 2)) * sh(3, 1) * sh(4, 1), 1e-9);
            check_mod_sign(det3(I(1, 2), I(2, 3), I(2, 4)),
                           0.5 * std::sinh(lval(1, 2)) * sh(3, 2) * sh(4, 2), 1e-9);
            check_mod_sign(det3(I(1, 3), I(2, 3), I(3, 4)),
                           -0.5 * std::sinh(lval(1, 3)) * sh(2, 3) * sh(4, 3), 1e-9);
            check_mod_sign(det3(I(1, 4), I(2, 4), I(3, 4)),
                           0.5 * std::sinh(lval(1, 4)) * sh(2, 4) * sh(3, 4), 1e-9);
        } else {
            auto aval = [&](int j, int k) { return h.derived[pair_index(j, k)]; };
            check_mod_sign(det3(I(1, 2), I(1, 3), I(1, 4)),
                           i_unit * 0.5 * std::sin(aval(1, 2)) * sh(3, 1) * sh(4, 1), 1e-9);
            check_mod_sign(det3(I(1, 2), I(2, 3), I(2, 4)),
                           -i_unit * 0.5 * std::sin(aval(1, 2)) * sh(3, 2) * sh(4, 2), 1e-9);
            check_mod_sign(det3(I(1, 3), I(2, 3), I(3, 4)),
                           i_unit * 0.5 * std::sin(aval(1, 3)) * sh(2, 3) * sh(4, 3), 1e-9);
            check_mod_sign(det3(I(1, 4), I(2, 4), I(3, 4)),
                           -i_unit * 0.5 * std::sin(aval(1, 4)) * sh(2, 4) * sh(3, 4), 1e-9);
        }

        // (2): the difference-vector determinant (det4)/(ldet4)
        const Mat3 w13 = adjoint_transpose(h.g[pair_index(1, 3)]);
        const Mat3 w23 = adjoint_transpose(h.g[pair_index(2, 3)]);
        const Complex det4 = det3(I(1, 2) - Vec3(w13 * I(1, 2)), I(1, 4) - Vec3(w13 * I(1, 4)),
                                  I(2, 4) - Vec3(w23 * I(2, 4)));
        if (fsl) {
            auto a = [&](int j, int k) { return g.shape.angle(j, k); };
            auto lval = [&](int j, int k) { return h.derived[pair_index(j, k)]; };
            const Complex expect = Complex(0.0, 4.0) * std::sin(a(1, 2)) *
                                   std::pow(std::sin(a(1, 3)), 2) * std::sinh(lval(1, 3)) *
                                   std::sinh(lval(2, 3)) * sh(1, 2) * sh(2, 1) *
                                   std::pow(std::sinh(h.short_edge[4][1]), 2);
            check_mod_sign(det4, expect, 1e-9);
        } else {
            auto l = [&](int j, int k) { return g.shape.length(j, k); };
            auto aval = [&](int j, int k) { return h.derived[pair_index(j, k)]; };
            const Complex expect = Complex(-4.0, 0.0) * std::sin(aval(1, 3)) *
                                   std::sin(aval(2, 3)) * std::sinh(l(1, 2)) *
                                   std::pow(std::sinh(l(1, 3)), 2) * sh(1, 2) * sh(2, 1) *
                                   std::pow(std::sinh(h.short_edge[4][1]), 2);
            check_mod_sign(det4, expect, 1e-9);
        }
    }
}
