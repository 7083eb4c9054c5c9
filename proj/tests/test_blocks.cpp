#include "torsionforge/blocks.hpp"

#include "torsionforge/sampling.hpp"

#include "test_helpers.hpp"

#include <numbers>

using namespace torsionforge;

namespace {
constexpr double pi = std::numbers::pi;

TetShape regular(double a) { return TetShape::from_angles({a, a, a, a, a, a}); }
}  // namespace

TEST_CASE("pants torsion anchors") {
    // cone (pi/4, pi/4, pi/4): +- i/(16 sin^3(pi/4)) = +- i sqrt(2)/8
    const auto cone = pants_torsion(PantsGeometry::cone(pi / 4, pi / 4, pi / 4));
    check_mod_sign(cone.closed_form.value, Complex(0.0, 0.17677669529663692), 1e-12);
    CHECK(cone.residual < 1e-9);

    // boundary (1,1,1): +- 1/(16 sinh^3 1)
    const auto bdy = pants_torsion(PantsGeometry::boundary(1.0, 1.0, 1.0));
    check_mod_sign(bdy.closed_form.value, Complex(0.0385073245799567, 0.0), 1e-12);
    CHECK(bdy.residual < 1e-9);

    CHECK_THROWS_AS(pants_torsion(PantsGeometry::cone(1.5, 1.5, 1.5)), InvalidShapeError);
}

TEST_CASE("pants torsion closed vs direct on random geometries") {
    ShapeSampler smp(80);
    for (int i = 0; i < 200; ++i) {
        const auto rep = pants_torsion(smp.pants_cone(), TorsionMethod::Both);
        CHECK(rep.residual < 1e-9);
    }
    for (int i = 0; i < 200; ++i) {
        const auto rep = pants_torsion(smp.pants_boundary(), TorsionMethod::Both);
        CHECK(rep.residual < 1e-9);
    }
}

TEST_CASE("dblock torsion anchors") {
    // regular pi/4 fsl block
    const auto reg = dblock_torsion(BlockGeometry::fsl(regular(pi / 4)));
    check_mod_sign(reg.closed_form.value, Complex(0.0, 0.5904673532860533), 1e-12);
    CHECK(reg.residual < 1e-9);

    // regular dual block with the matching lengths
    const double lreg = 1.1283839649663008;
    const auto dual =
        dblock_torsion(BlockGeometry::dual(TetShape::from_lengths({lreg, lreg, lreg, lreg, lreg, lreg})));
    check_mod_sign(dual.closed_form.value, Complex(0.0, 0.040286090264321436), 1e-10);
    CHECK(dual.residual < 1e-9);
    CHECK(std::abs(dual.closed_form.value) > 0.0);
}

TEST_CASE("dblock torsion closed vs direct on random shapes") {
    ShapeSampler smp(81);
    for (int i = 0; i < 200; ++i) {
        const auto rep = dblock_torsion(BlockGeometry::fsl(smp.fsl_angles()), TorsionMethod::Both);
        CHECK(rep.residual < 1e-9);
    }
    for (int i = 0; i < 200; ++i) {
        const auto rep = dblock_torsion(BlockGeometry::dual(smp.dual_lengths()), TorsionMethod::Both);
        CHECK(rep.residual < 1e-9);
    }
}

TEST_CASE("homology structure of the direct pipeline") {
    // H_0 = 0, H_1 of dimension 3 (pants) resp. 6 (blocks): these are the
    // rank conditions enforced inside chain_torsion; run with pinned ranks
    ShapeSampler smp(82);
    const PantsComplexData p = pants_complex(smp.pants_cone());
    TorsionOptions opts;
    opts.expected_ranks = std::vector<int>{-1, 6};
    CHECK_NOTHROW(chain_torsion(p.complex, opts));
    CHECK(p.complex.homology_lifts[1].size() == 3);

    const BlockComplexData b = dblock_complex(BlockGeometry::fsl(smp.fsl_angles()));
    CHECK_NOTHROW(chain_torsion(b.complex, opts));
    CHECK(b.complex.homology_lifts[1].size() == 6);
}

TEST_CASE("s_invariant") {
    const BlockGeometry reg = BlockGeometry::fsl(regular(pi / 4));
    const Complex s = s_invariant(reg);
    check_mod_sign(s, Complex(0.0, 2.361869413144212), 1e-12);

    // permutation invariance across all 24 orderings
    ShapeSampler smp(83);
    for (int i = 0; i < 10; ++i) {
        const BlockGeometry g = (i % 2 == 0) ? BlockGeometry::fsl(smp.fsl_angles())
                                             : BlockGeometry::dual(smp.dual_lengths());
        const Complex ref = s_invariant(g);
        std::array<int, 4> q = {1, 2, 3, 4};
        do {
            check_near(s_invariant(g, q), ref, 1e-9);
        } while (std::next_permutation(q.begin(), q.end()));
    }

    // S^2 real and negative for real fsl data
    for (int i = 0; i < 50; ++i) {
        const Complex v = s_invariant(BlockGeometry::fsl(smp.fsl_angles()));
        const Complex v2 = v * v;
        CHECK(v2.real() < 0.0);
        CHECK(std::abs(v2.imag()) < 1e-10 * std::abs(v2.real()));
    }

    CHECK_THROWS_AS(s_invariant(reg, {1, 1, 2, 3}), InvalidInputError);
}

TEST_CASE("gram determinant identity") {
    // regular pi/4: S^2 = det G_alpha = -5.5784271...
    const auto rep = verify_gram_identity(BlockGeometry::fsl(regular(pi / 4)));
    check_near(rep.s_squared, Complex(-5.578427124746191, 0.0), 1e-11);
    check_near(rep.gram_det, Complex(-5.578427124746191, 0.0), 1e-11);
    CHECK(rep.holds(1e-10));

    ShapeSampler smp(84);
    for (int i = 0; i < 1000; ++i)
        CHECK(verify_gram_identity(BlockGeometry::fsl(smp.fsl_angles())).holds(1e-9));
    for (int i = 0; i < 1000; ++i)
        CHECK(verify_gram_identity(BlockGeometry::dual(smp.dual_lengths())).holds(1e-9));
}

TEST_CASE("intermediate hexagon/triangle determinant identity") {
    // sinh^2 l_cd sinh^2 s_ad sinh^2 s_bd = 2 cosh s_ad cosh s_bd cosh s_cd
    //   + cosh^2 s_ad + cosh^2 s_bd + cosh^2 s_cd - 1  (fsl)
    // sin^2 a_cd sinh^2 s_ad sinh^2 s_bd = 2 cosh s_ad cosh s_bd cosh s_cd
    //   - cosh^2 s_ad - cosh^2 s_bd - cosh^2 s_cd + 1  (dual)
    ShapeSampler smp(85);
    for (int i = 0; i < 100; ++i) {
        const bool fsl = (i % 2 == 0);
        const BlockGeometry g = fsl ? BlockGeometry::fsl(smp.fsl_angles())
                                    : BlockGeometry::dual(smp.dual_lengths());
        const BlockHolonomy h = block_holonomy(g);
        const int a = 1, b = 2, c = 3, dd = 4;
        auto ch = [&](int j, int k) { return std::cosh(h.short_edge[j][k]); };
        auto shsq = [&](int j, int k) { return std::pow(std::sinh(h.short_edge[j][k]), 2); };
        if (fsl) {
            const double l_cd = h.derived[pair_index(c, dd)];
            const double lhs = std::pow(std::sinh(l_cd), 2) * shsq(a, dd) * shsq(b, dd);
            const double rhs = 2.0 * ch(a, dd) * ch(b, dd) * ch(c, dd) +
                               std::pow(ch(a, dd), 2) + std::pow(ch(b, dd), 2) +
                               std::pow(ch(c, dd), 2) - 1.0;
            check_near(lhs, rhs, 1e-10);
        } else {
            const double a_cd = h.derived[pair_index(c, dd)];
            const double lhs = std::pow(std::sin(a_cd), 2) * shsq(a, dd) * shsq(b, dd);
            const double rhs = 2.0 * ch(a, dd) * ch(b, dd) * ch(c, dd) -
                               std::pow(ch(a, dd), 2) - std::pow(ch(b, dd), 2) -
                               std::pow(ch(c, dd), 2) + 1.0;
            check_near(lhs, rhs, 1e-10);
        }
    }
}

TEST_CASE("degenerate geometries rejected up front") {
    CHECK_THROWS_AS(dblock_torsion(BlockGeometry::fsl(regular(pi / 3))), InvalidShapeError);
    CHECK_THROWS_AS(pants_torsion(PantsGeometry::cone(pi / 2, pi / 4, pi / 4)),
                    InvalidShapeError);
}
