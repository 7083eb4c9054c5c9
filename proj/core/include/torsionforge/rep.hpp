#pragma once

#include "torsionforge/gram.hpp"
#include "torsionforge/types.hpp"

#include <array>

namespace torsionforge {

// Induced action of an SL(2,C) matrix on degree-2 polynomials in the basis
// (X^2, XY, Y^2), with [a,b]^T identified with aX + bY.  Kills the center:
// sym2(-A) = sym2(A); multiplicative: sym2(AB) = sym2(A) sym2(B).
Mat3 sym2(const Mat2& a);

// sym2 of the transpose; this is the matrix acting on invariant vectors and
// on lifted cells of the twisted chain complexes.
inline Mat3 adjoint_transpose(const Mat2& a) { return sym2(a.transpose()); }

// The invariant vector (ac, ad+bc, bd) built from eigenvectors v+ = (a,b),
// v- = (c,d) of m, normalized by the determinant of the eigenvector matrix
// (canonical up to +-1; the sign is pinned so that the largest-magnitude
// component has nonnegative real part, imaginary tie-break).
// Requires m non-central and diagonalizable.
Vec3 invariant_vector(const Mat2& m);

enum class PantsKind { Cone, Boundary };

// Cone: half cone-angles alpha_1..alpha_3 in (0,pi) with sum < pi.
// Boundary: half boundary-lengths l_1..l_3 > 0.
struct PantsGeometry {
    PantsKind kind = PantsKind::Cone;
    std::array<double, 3> params{};

    static PantsGeometry cone(double a1, double a2, double a3);
    static PantsGeometry boundary(double l1, double l2, double l3);
};

void validate(const PantsGeometry& g);

struct PantsHolonomy {
    // rho(gamma_1), rho(gamma_2), rho(gamma_3), first-listed factorizations
    std::array<Mat2, 3> g{};
    // the alternative factorizations of rho(gamma_2), rho(gamma_3)
    Mat2 g2_alt, g3_alt;
    // seam lengths: s_k opposite the k-th parameter
    std::array<double, 3> seam{};
};

// Holonomies of the pair of pants.  gamma_1 gamma_2 gamma_3 = +-1 and both
// factorizations of gamma_2, gamma_3 agree up to sign.
PantsHolonomy pants_holonomy(const PantsGeometry& g);

enum class BlockKind { Fsl, Dual };

// Fsl: D_alpha, double along hexagonal faces; shape kind must be Angles.
// Dual: D_l, double along triangles of truncation; shape kind Lengths.
struct BlockGeometry {
    BlockKind kind = BlockKind::Fsl;
    TetShape shape;

    static BlockGeometry fsl(const TetShape& angles);
    static BlockGeometry dual(const TetShape& lengths);
};

void validate(const BlockGeometry& g);

struct BlockHolonomy {
    // rho(gamma_jk) in kPairs order; gamma_34 is reconstructed from the
    // spine relations; only five of the six have direct factorizations
    std::array<Mat2, 6> g{};
    // second factorization of rho(gamma_14)
    Mat2 g14_alt;
    // spine words rho(gamma_{a_k a_3^{-1}}) for edges a_1..a_4:
    //   a_1 -> gamma_13, a_2 -> gamma_23, a_3 -> 1,
    //   a_4 -> gamma_14 gamma_13  (Fsl)  /  gamma_14^{-1} gamma_13  (Dual).
    std::array<Mat2, 4> spine_words{};
    // short-edge lengths s_jk (j = triangle, k = hexagon for Fsl; j =
    // hexagon, k = triangle for Dual); diagonal unused
    std::array<std::array<double, 5>, 5> short_edge{};
    // derived edge parameters: lengths l_jk for Fsl, angles alpha_jk for Dual
    std::array<double, 6> derived{};
};

// The six holonomies of a (dual) D-block.  gamma_12 gamma_23 = +-gamma_13,
// and trace rho(gamma_34) = -+2cos(alpha_34) resp. -+2cosh(l_34); this ties
// the Gram conversions, the Law-of-Cosine short edges and the explicit
// matrices together.
BlockHolonomy block_holonomy(const BlockGeometry& g);

}  // namespace torsionforge
