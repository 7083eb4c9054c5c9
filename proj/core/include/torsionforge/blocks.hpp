#pragma once

#include "torsionforge/rep.hpp"
#include "torsionforge/torsion.hpp"
#include "torsionforge/types.hpp"

#include <array>

namespace torsionforge {

enum class TorsionMethod { Closed, Direct, Both };

struct BlockTorsionReport {
    TorsionValue closed_form;
    TorsionValue direct;
    double residual = 0.0;     // mod-sign distance, set when both were computed
    Complex s_invariant{};     // blocks only
};

// Torsion of a pair of pants with the standard homology basis
// {I_k (x) [gamma_k]}:
//   cone:      +- i / (16 sin a1 sin a2 sin a3)
//   boundary:  +- 1 / (16 sinh l1 sinh l2 sinh l3)
// The direct method runs holonomy -> sym2 -> twisted spine complex ->
// chain_torsion and must agree mod sign.
BlockTorsionReport pants_torsion(const PantsGeometry& g,
                                 TorsionMethod method = TorsionMethod::Both);

// Torsion of a (dual) D-block with basis {I_jk (x) [gamma_jk]}:
//   D_alpha: +- i sinh l14 sinh s24 sinh s34 / (32 sin a12 sin a13 sin a23)
//   D_l:     +- i sin a14 sinh s24 sinh s34 / (32 sinh l12 sinh l13 sinh l23)
BlockTorsionReport dblock_torsion(const BlockGeometry& g,
                                  TorsionMethod method = TorsionMethod::Both);

// S(D_alpha) = i sinh l_cd sinh s_ad sinh s_bd sin a_ad sin a_bd sin a_cd,
// S(D_l)     = i sin a_cd sinh s_ad sinh s_bd sinh l_ad sinh l_bd sinh l_cd,
// for the facet assignment (a,b,c,d); independent of the permutation.
Complex s_invariant(const BlockGeometry& g, const std::array<int, 4>& facet_order = {1, 2, 3, 4});

struct GramIdentityReport {
    Complex s_squared{};
    Complex gram_det{};
    double residual = 0.0;  // |S^2 - det G| / max(1, |det G|)
    bool holds(double tol = 1e-9) const { return residual <= tol; }
};

// S(D)^2 = det G evaluated at the block's Gram argument (angle shape for
// fsl blocks, length shape for dual blocks).
GramIdentityReport verify_gram_identity(const BlockGeometry& g);

// Exposed for tests and assembly: invariant vectors and the twisted spine
// complex of a block.
struct BlockComplexData {
    BlockHolonomy holonomy;
    std::array<Vec3, 6> invariants{};  // I_jk in kPairs order
    BasedChainComplex complex;
};
BlockComplexData dblock_complex(const BlockGeometry& g);

struct PantsComplexData {
    PantsHolonomy holonomy;
    std::array<Vec3, 3> invariants{};
    BasedChainComplex complex;
};
PantsComplexData pants_complex(const PantsGeometry& g);

}  // namespace torsionforge
