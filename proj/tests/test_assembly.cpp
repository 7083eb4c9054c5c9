#include "torsionforge/assembly.hpp"

#include "torsionforge/fixtures.hpp"
#include "torsionforge/linalg.hpp"
#include "torsionforge/sampling.hpp"
#include "torsionforge/verify.hpp"

#include "test_helpers.hpp"

#include <numbers>
#include <numeric>

using namespace torsionforge;

namespace {
constexpr double pi = std::numbers::pi;
const Complex kD1Anchor(0.0, 18.894955305153708);
}  // namespace

TEST_CASE("resolve_graph counts and validation") {
    const Fixture d1 = d1_fixture();
    const ResolvedGraph r = resolve_graph(d1.graph);
    CHECK(r.n == 3);
    CHECK(r.p == 4);
    CHECK(r.c == 2);
    CHECK(r.d == 1);
    CHECK(r.rows.size() == 12);
    CHECK(r.crossings.size() == 12);

    const Fixture d2 = d2_fixture(ManifoldKind::Fsl, {pi / 4, pi / 4, pi / 4, pi / 4, pi / 4, pi / 4});
    const ResolvedGraph r2 = resolve_graph(d2.graph);
    CHECK(r2.n == 6);
    CHECK(r2.p == 4);
    CHECK(r2.c == 0);
    CHECK(r2.d == 2);

    // broken p = c + 2d: drop an interface
    GluingGraph broken = d1.graph;
    broken.interfaces.pop_back();
    CHECK_THROWS_AS(resolve_graph(broken), InvalidInputError);

    // direct self-gluing is rejected
    GluingGraph selfglue = d2.graph;
    selfglue.interfaces[0] = {1, {1, 1}, {1, 2}};
    CHECK_THROWS_AS(resolve_graph(selfglue), InvalidInputError);

    // all-thickened-pants graph has no D-block
    GluingGraph nod;
    nod.kind = ManifoldKind::Fsl;
    nod.blocks = {{1, PieceKind::ThickenedPants}, {2, PieceKind::ThickenedPants}};
    nod.interfaces = {{1, {1, 1}, {2, 1}}, {2, {1, 2}, {2, 2}}};
    nod.tori = {{1, {{1, 0}, {2, 0}}}, {2, {{1, 1}, {2, 1}}}, {3, {{1, 2}, {2, 2}}}};
    CHECK_THROWS_AS(resolve_graph(nod), InvalidInputError);

    // empty traversal
    GluingGraph empt = d1.graph;
    empt.tori[0].traversal.clear();
    CHECK_THROWS_AS(resolve_graph(empt), InvalidInputError);

    // slot traversed twice
    GluingGraph dup = d1.graph;
    dup.tori[0].traversal.push_back(dup.tori[1].traversal[0]);
    CHECK_THROWS_AS(resolve_graph(dup), InvalidInputError);
}

TEST_CASE("mv_matrices structure") {
    const Fixture d1 = d1_fixture();
    const MvMatrices mv = mv_matrices(d1.graph);

    // dims (n, 3p, 3c+6d, n) = (3, 12, 12, 3)
    CHECK(mv.seq.dims == std::vector<int>{0, 0, 0, 3, 12, 12, 3});

    // each row of delta has exactly two nonzero entries, each +-1; each
    // column one +1 and one -1
    for (int r = 0; r < mv.delta.rows(); ++r) {
        int nz = 0;
        for (int c = 0; c < mv.delta.cols(); ++c) {
            const double v = std::abs(mv.delta(r, c));
            if (v > 0) {
                CHECK(v == 1.0);
                ++nz;
            }
        }
        CHECK(nz == 2);
    }
    for (int c = 0; c < mv.delta.cols(); ++c) {
        Complex sum(0, 0);
        int nz = 0;
        for (int r = 0; r < mv.delta.rows(); ++r) {
            if (std::abs(mv.delta(r, c)) > 0) {
                ++nz;
                sum += mv.delta(r, c);
            }
        }
        CHECK(nz == 2);
        CHECK(sum == Complex(0, 0));
    }
    // each row of the connecting map has exactly one entry +-1
    for (int r = 0; r < mv.connecting.rows(); ++r) {
        int nz = 0;
        for (int c = 0; c < mv.connecting.cols(); ++c)
            if (std::abs(mv.connecting(r, c)) > 0) {
                CHECK(std::abs(mv.connecting(r, c)) == 1.0);
                ++nz;
            }
        CHECK(nz == 1);
    }

    // torsion of the sequence is exactly +-1
    const TorsionValue t = exact_sequence_torsion(mv.seq);
    CHECK(std::abs(std::abs(t.value) - 1.0) < 1e-12);
    CHECK(std::abs(t.value.imag()) < 1e-12);
}

TEST_CASE("mv torsion unit under relabelings") {
    std::mt19937_64 rng(17);
    const Fixture d1 = d1_fixture();
    const Fixture d2 = d2_fixture(ManifoldKind::Double, {1.0, 1.1, 0.9, 1.2, 0.8, 1.05});
    for (const Fixture& f : {d1, d2}) {
        for (int i = 0; i < 50; ++i) {
            std::vector<int> border(f.graph.blocks.size());
            std::iota(border.begin(), border.end(), 0);
            std::shuffle(border.begin(), border.end(), rng);
            std::vector<int> iorder(f.graph.interfaces.size());
            std::iota(iorder.begin(), iorder.end(), 0);
            std::shuffle(iorder.begin(), iorder.end(), rng);
            const GluingGraph g = permute_interfaces(permute_blocks(f.graph, border), iorder);
            const TorsionValue t = exact_sequence_torsion(mv_matrices(g).seq);
            CHECK(std::abs(std::abs(t.value) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("assembled torsion: d=1 anchor") {
    const Fixture f = d1_fixture();
    const AssemblyReport rep = assemble_torsion(f.graph, f.character, AssemblyMethod::Both);
    CHECK(rep.n == 3);
    CHECK(rep.d == 1);
    check_mod_sign(rep.closed_form.value, kD1Anchor, 1e-10);
    check_mod_sign(rep.mv_value.value, kD1Anchor, 1e-8);
    CHECK(rep.residual < 1e-8);
    CHECK(std::abs(std::abs(rep.tor_h.value) - 1.0) < 1e-12);
    // closed form = 8 sqrt(det G), det G = -5.5784271...
    REQUIRE(rep.block_gram_dets.size() == 1);
    check_near(rep.block_gram_dets[0], Complex(-5.578427124746191, 0.0), 1e-11);
}

TEST_CASE("assembled torsion: fixtures at random characters") {
    ShapeSampler smp(90);
    for (int i = 0; i < 20; ++i) {
        const double c = smp.uniform(0.15, 1.0);
        const double hi = std::min(pi - 2 * c - 0.05, 1.4);
        const Fixture f = d1_fixture(smp.uniform(0.1, hi), smp.uniform(0.1, hi), c);
        const AssemblyReport rep = assemble_torsion(f.graph, f.character, AssemblyMethod::Both);
        CHECK(rep.residual < 1e-8);
    }
    for (int i = 0; i < 20; ++i) {
        const Fixture f = d2_fixture(ManifoldKind::Fsl, smp.fsl_angles().angles());
        const AssemblyReport rep = assemble_torsion(f.graph, f.character, AssemblyMethod::Both);
        CHECK(rep.residual < 1e-8);
    }
    for (int i = 0; i < 20; ++i) {
        const Fixture f = d2_fixture(ManifoldKind::Double, smp.dual_lengths().lengths());
        const AssemblyReport rep = assemble_torsion(f.graph, f.character, AssemblyMethod::Both);
        CHECK(rep.residual < 1e-8);
    }
}

TEST_CASE("assembled torsion invariant under reordering") {
    const Fixture f = d1_fixture(0.6, 0.7, 0.5);
    const Complex base = assemble_torsion(f.graph, f.character, AssemblyMethod::Both).mv_value.value;
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10; ++i) {
        std::vector<int> border = {0, 1, 2};
        std::shuffle(border.begin(), border.end(), rng);
        std::vector<int> iorder = {0, 1, 2, 3};
        std::shuffle(iorder.begin(), iorder.end(), rng);
        const GluingGraph g = permute_interfaces(permute_blocks(f.graph, border), iorder);
        const AssemblyReport rep = assemble_torsion(g, f.character, AssemblyMethod::Both);
        check_mod_sign(rep.mv_value.value, base, 1e-9);
        CHECK(rep.residual < 1e-8);
    }
}

TEST_CASE("assembled torsion invariant under homology-basis rescaling") {
    // rescaling a pants (or block) homology basis vector scales one torsion
    // and the H-sequence transition oppositely; the assembled value is blind
    const Fixture f = d1_fixture();
    const MvMatrices mv = mv_matrices(f.graph);
    const AssemblyReport base = assemble_torsion(f.graph, f.character, AssemblyMethod::Both);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const int np = static_cast<int>(mv.delta.cols());
    const int nb = static_cast<int>(mv.delta.rows());
    Vec lam(np), mu(nb);
    for (int i = 0; i < np; ++i) lam(i) = Complex(1.0 + 0.5 * d(rng), 0.5 * d(rng));
    for (int i = 0; i < nb; ++i) mu(i) = Complex(1.0 + 0.5 * d(rng), 0.5 * d(rng));

    Mat delta = mv.delta, conn = mv.connecting, eps = mv.eps;
    for (int c = 0; c < np; ++c) delta.col(c) *= lam(c);
    for (int r = 0; r < np; ++r) conn.row(r) /= lam(r);
    for (int r = 0; r < nb; ++r) delta.row(r) /= mu(r);
    for (int c = 0; c < nb; ++c) eps.col(c) *= mu(c);

    BasedChainComplex seq = BasedChainComplex::make(mv.seq.dims);
    seq.boundary[4] = eps;
    seq.boundary[5] = delta;
    seq.boundary[6] = conn;
    const Complex tor_h = exact_sequence_torsion(seq).value;

    // pants torsions pick up the product of their three curve scalings,
    // block torsions the product over their rows
    const ResolvedGraph& r = mv.resolved;
    Complex value(1.0, 0.0);
    const double a = pi / 4;
    const Complex tor_pants = pants_torsion(PantsGeometry::cone(a, a, a)).closed_form.value;
    const Complex tor_block =
        dblock_torsion(BlockGeometry::fsl(TetShape::from_angles({a, a, a, a, a, a})))
            .closed_form.value;
    std::vector<Complex> block_scale(f.graph.blocks.size(), Complex(1.0, 0.0));
    for (int row = 0; row < nb; ++row) block_scale[r.rows[row].first] *= mu(row);
    for (std::size_t bi = 0; bi < f.graph.blocks.size(); ++bi)
        value *= block_scale[bi] *
                 (f.graph.blocks[bi].kind == PieceKind::ThickenedPants ? tor_pants : tor_block);
    std::vector<Complex> itf_scale(r.p, Complex(1.0, 0.0));
    for (int c = 0; c < np; ++c) itf_scale[r.crossings[c].interface_index] *= lam(c);
    for (int ii = 0; ii < r.p; ++ii) value /= itf_scale[ii] * tor_pants;
    value /= tor_h;

    check_mod_sign(value, base.closed_form.value, 1e-9);
}

TEST_CASE("longitude holonomy") {
    // doubles: exactly 2l
    const Fixture d2 = d2_fixture(ManifoldKind::Double, {1.0, 1.1, 0.9, 1.2, 0.8, 1.05});
    const auto ul = longitude_holonomy(d2.graph, d2.character);
    for (int t = 0; t < 6; ++t) check_near(ul[t], 2.0 * d2.character.params[t], 1e-15);

    // fsl regular: opposite-edge pairs traverse two edges of length l_reg
    const double lreg = 1.1283839649663008;
    const Fixture opp = d1_opposite_fixture();
    const auto ufsl = longitude_holonomy(opp.graph, opp.character);
    check_near(ufsl[0], Complex(2.0 * lreg, 0.0), 1e-10);
    check_near(ufsl[1], Complex(2.0 * lreg, 0.0), 1e-10);
    check_near(ufsl[2], Complex(lreg, 0.0), 1e-10);
    check_near(ufsl[3], Complex(lreg, 0.0), 1e-10);

    // the d1 fixture components traverse 1, 1 and 4 edges
    const Fixture d1 = d1_fixture();
    const auto u1 = longitude_holonomy(d1.graph, d1.character);
    check_near(u1[0], Complex(lreg, 0.0), 1e-10);
    check_near(u1[1], Complex(lreg, 0.0), 1e-10);
    check_near(u1[2], Complex(4.0 * lreg, 0.0), 1e-10);
}

TEST_CASE("cone angles of doubles") {
    // each component of the d2 fixture passes two blocks; for the regular
    // dual shape the dihedral angles are pi/4, so theta = 2*(2*pi/4) = pi
    const double lreg = 1.1283839649663008;
    const Fixture f = d2_fixture(ManifoldKind::Double, {lreg, lreg, lreg, lreg, lreg, lreg});
    const auto theta = cone_angles(f.graph, f.character);
    for (int t = 0; t < 6; ++t) check_near(theta[t], Complex(pi, 0.0), 1e-9);
}

TEST_CASE("change of curves: meridians are the identity") {
    const Fixture f = d1_fixture();
    CurveSystem curves;
    curves.pq = {{1, 0}, {1, 0}, {1, 0}};
    const ChangeOfCurvesReport rep = change_of_curves(f.graph, f.character, curves);
    check_near(rep.jacobian_det, Complex(1.0, 0.0), 1e-9);
    check_mod_sign(rep.value.value, kD1Anchor, 1e-9);
    CHECK(rep.fd_relative_error < 1e-6);
}

TEST_CASE("change of curves: doubles meridian system and the cone-angle Jacobian") {
    const Fixture f = d2_fixture(ManifoldKind::Double, {1.0, 1.1, 0.9, 1.2, 0.8, 1.05});
    CurveSystem meridians;
    meridians.pq.assign(6, {1, 0});
    const ChangeOfCurvesReport rep = change_of_curves(f.graph, f.character, meridians);
    CHECK(rep.fd_relative_error < 1e-6);

    // independent finite-difference oracle for d theta / d l
    const int n = 6;
    Mat dtheta(n, n);
    const double h = 1e-6;
    for (int t = 0; t < n; ++t) {
        CharacterPoint up = f.character, dn = f.character;
        up.params[t] += h / 2.0;
        dn.params[t] -= h / 2.0;
        const auto tp = cone_angles(f.graph, up);
        const auto tm = cone_angles(f.graph, dn);
        for (int s = 0; s < n; ++s) dtheta(s, t) = (tp[s] - tm[s]) / h;
    }
    // u_mu = u_m = i theta, native u_l = 2l: J = (i/2) dtheta/dl
    const Complex det_expect =
        std::pow(Complex(0.0, 0.5), n) * linalg::determinant(dtheta);
    check_near(rep.jacobian_det, det_expect, 1e-5);

    // T(M,m) = i^n 2^{3d-n} det(dtheta/dl) prod sqrt(det G): same value
    const AssemblyReport base = assemble_torsion(f.graph, f.character, AssemblyMethod::Closed);
    Complex closed2 = std::pow(Complex(0.0, 1.0), n) * std::pow(2.0, 3 * 2 - n) *
                      linalg::determinant(dtheta);
    for (const Complex& det : base.block_gram_dets) closed2 *= std::sqrt(det);
    check_mod_sign(rep.value.value, closed2, 1e-5);
}

TEST_CASE("change of curves: jacobian row scaling") {
    const Fixture f = d1_fixture();
    CurveSystem a, b;
    a.pq = {{1, 0}, {1, 0}, {1, 0}};
    b.pq = {{3, 0}, {1, 0}, {1, 0}};
    const Complex va = change_of_curves(f.graph, f.character, a).jacobian_det;
    const Complex vb = change_of_curves(f.graph, f.character, b).jacobian_det;
    check_near(vb, 3.0 * va, 1e-9);
}

TEST_CASE("surgery formula bookkeeping") {
    // filled value = curve-system value x prod 1/(4 sinh^2(u/2)) exactly
    const Fixture f = d1_fixture();
    CurveSystem curves;
    curves.pq = {{2, 0}, {3, 0}, {1, 0}};
    const ChangeOfCurvesReport two = change_of_curves(f.graph, f.character, curves);
    const std::vector<Complex> u_gamma = {Complex(0.4, 0.3), Complex(1.2, -0.2),
                                          Complex(0.7, 0.1)};
    const TorsionValue three = surgery_apply(two.value, u_gamma);
    Complex direct = two.value.value;
    for (const Complex& u : u_gamma) {
        const Complex s = std::sinh(u / 2.0);
        direct /= 4.0 * s * s;
    }
    check_near(three.value, direct, 1e-15);

    // 2^{3d} (1/4)^n = 2^{3d-2n} exactly
    const double lhs = std::pow(2.0, 3.0) * std::pow(0.25, 3.0);
    CHECK(lhs == std::pow(2.0, 3.0 - 6.0));

    CHECK_THROWS_AS(surgery_apply(two.value, {Complex(0.0, 2.0 * pi)}), InvalidInputError);
}

TEST_CASE("solve_filling") {
    // curves (4,0),(4,0),(6,0) with alpha = (pi/4, pi/4, pi/6) is already a
    // solution: fixed point with zero iterations
    const Fixture f = d1_fixture(pi / 4, pi / 4, pi / 6);
    CurveSystem curves;
    curves.pq = {{4, 0}, {4, 0}, {6, 0}};
    const FillingResult res = solve_filling(f.graph, curves, f.character);
    CHECK(res.iterations == 0);
    CHECK(res.residual_inf < 1e-12);

    // a small perturbation reconverges to the same point
    CharacterPoint chi = f.character;
    chi.params[0] += Complex(0.01, 0.005);
    chi.params[2] -= Complex(0.004, -0.008);
    const FillingResult back = solve_filling(f.graph, curves, chi);
    CHECK(back.residual_inf < 1e-10);
    for (int t = 0; t < 3; ++t) check_near(back.chi.params[t], f.character.params[t], 1e-8);

    // non-convergence is surfaced, not silent
    CHECK_THROWS_AS(solve_filling(f.graph, curves, chi, 0), SolverError);

    // (0,0) is not a curve
    CurveSystem bad;
    bad.pq = {{0, 0}, {1, 0}, {1, 0}};
    CHECK_THROWS_AS(solve_filling(f.graph, bad, f.character), InvalidInputError);
}

TEST_CASE("random decompositions: exactness and closed-vs-mv agreement") {
    std::mt19937_64 rng(4711);
    const std::vector<std::pair<int, int>> shapes = {{1, 2}, {2, 0}, {2, 2}, {3, 1}, {4, 0}};
    for (const auto& [d, c] : shapes) {
        for (int rep = 0; rep < 6; ++rep) {
            const bool fsl = (rep % 2 == 0);
            const Fixture f = random_fixture(rng, d, c, fsl ? ManifoldKind::Fsl : ManifoldKind::Double,
                                             fsl ? 0.35 : 1.0);
            const MvMatrices mv = mv_matrices(f.graph);
            CHECK(mv.resolved.d == d);
            CHECK(mv.resolved.c == c);
            CHECK(mv.resolved.p == c + 2 * d);
            const TorsionValue th = exact_sequence_torsion(mv.seq);
            CHECK(std::abs(std::abs(th.value) - 1.0) < 1e-12);
            const AssemblyReport ar = assemble_torsion(f.graph, f.character, AssemblyMethod::Both);
            CHECK(ar.residual < 1e-8);
        }
    }
}
