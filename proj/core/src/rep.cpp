#include "torsionforge/rep.hpp"

#include "torsionforge/hyptrig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace torsionforge {

namespace {
constexpr double pi = std::numbers::pi;

Mat2 minv(const Mat2& m) { return m.inverse(); }

}  // namespace

Mat3 sym2(const Mat2& m) {
    if (std::abs(m.determinant() - 1.0) > 1e-8)
        throw InvalidInputError("sym2: matrix is not unimodular");
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    Mat3 out;
    out << a * a, a * b, b * b,
           2.0 * a * c, a * d + b * c, 2.0 * b * d,
           c * c, c * d, d * d;
    return out;
}

Vec3 invariant_vector(const Mat2& m) {
    const Complex tr = m(0, 0) + m(1, 1);
    const Complex disc = tr * tr - 4.0;
    if (std::abs(disc) < 1e-12) {
        throw DegenerateElementError(
            "invariant_vector: parabolic or central element (trace^2 = 4)");
    }
    const Complex root = std::sqrt(disc);
    const Complex lp = (tr + root) / 2.0;
    const Complex lq = (tr - root) / 2.0;

    // eigenvector for eigenvalue l of [[a,b],[c,d]]: (b, l-a) or (l-d, c)
    auto eigvec = [&](Complex l) -> Eigen::Vector2cd {
        const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
        Eigen::Vector2cd v1(b, l - a), v2(l - d, c);
        return (v1.norm() >= v2.norm()) ? v1 : v2;
    };
    Eigen::Vector2cd vp = eigvec(lp), vq = eigvec(lq);
    Mat2 e;
    e.col(0) = vp;
    e.col(1) = vq;
    const Complex det = e.determinant();
    if (std::abs(det) < 1e-14 * vp.norm() * vq.norm())
        throw DegenerateElementError("invariant_vector: eigenvectors are dependent");

    const Complex a = e(0, 0), b = e(1, 0), c = e(0, 1), d = e(1, 1);
    Vec3 iv;
    iv << a * c, a * d + b * c, b * d;
    iv /= det;

    // pin the residual +-1: largest-magnitude component gets Re >= 0
    int imax = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(iv(i)) > std::abs(iv(imax))) imax = i;
    const Complex lead = iv(imax);
    if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) iv = -iv;
    return iv;
}

PantsGeometry PantsGeometry::cone(double a1, double a2, double a3) {
    PantsGeometry g;
    g.kind = PantsKind::Cone;
    g.params = {a1, a2, a3};
    validate(g);
    return g;
}

PantsGeometry PantsGeometry::boundary(double l1, double l2, double l3) {
    PantsGeometry g;
    g.kind = PantsKind::Boundary;
    g.params = {l1, l2, l3};
    validate(g);
    return g;
}

void validate(const PantsGeometry& g) {
    if (g.kind == PantsKind::Cone) {
        for (double a : g.params)
            if (!(a > 0.0 && a < pi))
                throw InvalidShapeError("pants: cone half-angle outside (0,pi)");
        if (!(g.params[0] + g.params[1] + g.params[2] < pi))
            throw InvalidShapeError("pants: half-angle sum >= pi, triangle does not exist");
    } else {
        for (double l : g.params)
            if (!(l > 0.0)) throw InvalidShapeError("pants: boundary half-length must be positive");
    }
}

PantsHolonomy pants_holonomy(const PantsGeometry& g) {
    validate(g);
    PantsHolonomy out;
    const double p1 = g.params[0], p2 = g.params[1], p3 = g.params[2];
    const Complex i(0.0, 1.0);

    if (g.kind == PantsKind::Cone) {
        const double s1 = triangle_side(p1, p2, p3);
        const double s2 = triangle_side(p2, p1, p3);
        const double s3 = triangle_side(p3, p1, p2);
        out.seam = {s1, s2, s3};
        const Mat2 S1 = ss(s1), S2 = ss(s2), S3 = ss(s3);
        out.g[0] = dz(2.0 * i * p1);
        out.g[1] = minv(dz(i * p1)) * S3 * dz(2.0 * i * p2) * minv(S3) * dz(i * p1);
        out.g2_alt =
            S2 * minv(dz(-i * p3)) * minv(S1) * dz(2.0 * i * p2) * S1 * dz(-i * p3) * minv(S2);
        out.g[2] = S2 * dz(2.0 * i * p3) * minv(S2);
        out.g3_alt = minv(dz(i * p1)) * S3 * minv(dz(i * p2)) * minv(S1) * dz(2.0 * i * p3) * S1 *
                     dz(i * p2) * minv(S3) * dz(i * p1);
    } else {
        const double s1 = hexagon_side(p1, p2, p3);
        const double s2 = hexagon_side(p2, p1, p3);
        const double s3 = hexagon_side(p3, p1, p2);
        out.seam = {s1, s2, s3};
        const Mat2 S1 = ss(s1), S2 = ss(s2), S3 = ss(s3);
        out.g[0] = dz(2.0 * p1);
        out.g[1] = S3 * dz(-2.0 * p2) * minv(S3);
        out.g2_alt = dz(p1) * S2 * minv(dz(p3)) * minv(S1) * dz(2.0 * p2) * S1 * dz(p3) *
                     minv(S2) * minv(dz(p1));
        out.g[2] = dz(p1) * S2 * dz(-2.0 * p3) * minv(S2) * minv(dz(p1));
        out.g3_alt = S3 * dz(p2) * minv(S1) * dz(2.0 * p3) * S1 * minv(dz(p2)) * minv(S3);
    }
    return out;
}

BlockGeometry BlockGeometry::fsl(const TetShape& angles) {
    BlockGeometry g;
    g.kind = BlockKind::Fsl;
    g.shape = angles;
    validate(g);
    return g;
}

BlockGeometry BlockGeometry::dual(const TetShape& lengths) {
    BlockGeometry g;
    g.kind = BlockKind::Dual;
    g.shape = lengths;
    validate(g);
    return g;
}

void validate(const BlockGeometry& g) {
    if (g.kind == BlockKind::Fsl) {
        if (g.shape.kind != ShapeKind::Angles)
            throw InvalidShapeError("fsl block: shape kind must be angles");
        const HyperidealCheck chk = validate_hyperideal(g.shape);
        if (!chk.valid) {
            std::string msg = "fsl block: shape is not hyperideal";
            for (const auto& m : chk.messages) msg += "; " + m;
            throw InvalidShapeError(msg);
        }
    } else {
        if (g.shape.kind != ShapeKind::Lengths)
            throw InvalidShapeError("dual block: shape kind must be lengths");
        for (const Complex& z : g.shape.u)
            if (!(z.real() > 0.0)) throw InvalidShapeError("dual block: lengths must be positive");
        // realizability: every dihedral-angle cosine must land in [-1,1];
        // not every positive 6-tuple of lengths does
        const Mat4 gm = gram(g.shape);
        for (const auto& [j, k] : kPairs) {
            const auto [cs, ct] = complementary_pair(j, k);
            const double gst = gram_cofactor(gm, cs, ct).real();
            const double gss = gram_cofactor(gm, cs, cs).real();
            const double gtt = gram_cofactor(gm, ct, ct).real();
            if (!(gss * gtt > 0.0))
                throw InvalidShapeError("dual block: diagonal cofactor product not positive");
            const double ratio = gst / std::sqrt(gss * gtt);
            if (ratio < -1.0 - 1e-12 || ratio > 1.0 + 1e-12) {
                std::ostringstream os;
                os << "dual block: cos ratio " << ratio << " outside [-1,1] at edge " << j << k
                   << ", lengths are not realizable";
                throw InvalidShapeError(os.str());
            }
        }
    }
}

BlockHolonomy block_holonomy(const BlockGeometry& g) {
    validate(g);
    BlockHolonomy out;
    const Complex i(0.0, 1.0);

    if (g.kind == BlockKind::Fsl) {
        // angles given, edge lengths derived through the Gram cofactors
        const TetShape ls = lengths_from_angles(g.shape);
        auto a = [&](int j, int k) { return g.shape.angle(j, k); };
        auto l = [&](int j, int k) { return ls.length(j, k); };
        for (int idx = 0; idx < 6; ++idx) out.derived[idx] = ls.u[idx].real();

        // s_jk: side of the truncation triangle T_j lying on H_k; the angle
        // opposite it is alpha_st with {s,t} = {1..4} minus {j,k}
        auto short_edge = [&](int j, int k) {
            const auto [s, t] = complementary_pair(j, k);
            return triangle_side(a(s, t), a(s, k), a(t, k));
        };
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k)
                if (j != k) out.short_edge[j][k] = short_edge(j, k);
        auto S = [&](int j, int k) { return ss(out.short_edge[j][k]); };

        out.g[pair_index(1, 2)] = dz(2.0 * i * a(1, 2));
        out.g[pair_index(1, 3)] = S(4, 1) * dz(-2.0 * i * a(1, 3)) * minv(S(4, 1));
        out.g[pair_index(1, 4)] =
            dz(l(1, 2)) * S(3, 1) * dz(2.0 * i * a(1, 4)) * minv(S(3, 1)) * minv(dz(l(1, 2)));
        out.g14_alt = S(4, 1) * dz(l(1, 3)) * minv(S(2, 1)) * dz(-2.0 * i * a(1, 4)) * S(2, 1) *
                      minv(dz(l(1, 3))) * minv(S(4, 1));
        out.g[pair_index(2, 3)] = minv(dz(i * a(1, 2))) * S(4, 2) * dz(2.0 * i * a(2, 3)) *
                                  minv(S(4, 2)) * dz(i * a(1, 2));
        out.g[pair_index(2, 4)] = minv(dz(i * a(1, 2))) * S(4, 2) * dz(l(2, 3)) * minv(S(1, 2)) *
                                  dz(-2.0 * i * a(2, 4)) * S(1, 2) * minv(dz(l(2, 3))) *
                                  minv(S(4, 2)) * dz(i * a(1, 2));
    } else {
        // lengths given, dihedral angles derived; the dual block's Gram
        // argument is indexed by the connecting-triangle labels, so the raw
        // cofactor formula applies without relabeling
        const Mat4 gm = gram(g.shape);
        std::array<double, 6> alpha{};
        for (int idx = 0; idx < 6; ++idx) {
            const auto [j, k] = kPairs[idx];
            const auto [cs, ct] = complementary_pair(j, k);
            const double gst = gram_cofactor(gm, cs, ct).real();
            const double gss = gram_cofactor(gm, cs, cs).real();
            const double gtt = gram_cofactor(gm, ct, ct).real();
            if (!(gss * gtt > 0.0))
                throw InvalidShapeError("dual block: diagonal cofactor product not positive");
            const double ratio = gst / std::sqrt(gss * gtt);
            if (ratio < -1.0 - 1e-9 || ratio > 1.0 + 1e-9)
                throw InvalidShapeError("dual block: cos ratio outside [-1,1]");
            alpha[idx] = std::acos(std::clamp(ratio, -1.0, 1.0));
        }
        auto l = [&](int j, int k) { return g.shape.length(j, k); };
        auto a = [&](int j, int k) { return alpha[pair_index(j, k)]; };
        for (int idx = 0; idx < 6; ++idx) out.derived[idx] = alpha[idx];

        // s_jk: side of the hexagonal face H_j meeting T_k; the edge
        // opposite it in H_j is l_st with {s,t} = {1..4} minus {j,k}
        auto short_edge = [&](int j, int k) {
            const auto [s, t] = complementary_pair(j, k);
            return hexagon_side(l(s, t), l(s, k), l(t, k));
        };
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k)
                if (j != k) out.short_edge[j][k] = short_edge(j, k);
        auto S = [&](int j, int k) { return ss(out.short_edge[j][k]); };

        out.g[pair_index(1, 2)] = dz(-2.0 * l(1, 2));
        out.g[pair_index(1, 3)] = S(4, 1) * dz(-2.0 * l(1, 3)) * minv(S(4, 1));
        out.g[pair_index(1, 4)] = minv(dz(i * a(1, 2))) * S(3, 1) * dz(-2.0 * l(1, 4)) *
                                  minv(S(3, 1)) * dz(i * a(1, 2));
        // second factorization: the sign of the D_{2 l_14} exponent is fixed
        // by agreement with the first one (negated relative to it)
        out.g14_alt = S(4, 1) * dz(i * a(1, 3)) * minv(S(2, 1)) * dz(-2.0 * l(1, 4)) * S(2, 1) *
                      minv(dz(i * a(1, 3))) * minv(S(4, 1));
        out.g[pair_index(2, 3)] =
            dz(l(1, 2)) * S(4, 2) * dz(2.0 * l(2, 3)) * minv(S(4, 2)) * minv(dz(l(1, 2)));
        out.g[pair_index(2, 4)] = dz(l(1, 2)) * S(4, 2) * dz(i * a(2, 3)) * minv(S(1, 2)) *
                                  dz(2.0 * l(2, 4)) * S(1, 2) * minv(dz(i * a(2, 3))) *
                                  minv(S(4, 2)) * minv(dz(l(1, 2)));
    }

    // Spine words gamma_{a_k a_3^{-1}}.  With gamma_{a1 a2^{-1}} = gamma_12,
    // gamma_{a2 a3^{-1}} = gamma_23, gamma_{a1 a3^{-1}} = gamma_13, the
    // orientation conventions force gamma_{a4 a3^{-1}} = gamma_14 gamma_13
    // for D_alpha and gamma_14^{-1} gamma_13 for D_l; this is pinned by the
    // invariance of I_14, I_24 on the corresponding lifted cells.
    const Mat2& g13 = out.g[pair_index(1, 3)];
    const Mat2& g14 = out.g[pair_index(1, 4)];
    const Mat2& g23 = out.g[pair_index(2, 3)];
    const Mat2 w4 = (g.kind == BlockKind::Fsl) ? Mat2(g14 * g13) : Mat2(minv(g14) * g13);
    out.spine_words = {g13, g23, Mat2::Identity(), w4};

    // the loop around e_34 is the inverse spine word gamma_{a3 a4^{-1}}
    out.g[pair_index(3, 4)] = minv(w4);
    return out;
}

}  // namespace torsionforge
