#pragma once

#include "torsionforge/blocks.hpp"
#include "torsionforge/torsion.hpp"
#include "torsionforge/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace torsionforge {

enum class ManifoldKind { Fsl, Double };
enum class PieceKind { DBlock, DualDBlock, ThickenedPants };

// Combinatorial description of the decomposition into (dual) D-blocks and
// thickened pairs of pants, glued along interface pants.
//
// Faces: a (dual) D-block has faces 1..4; face f carries the three curve
// slots {j,k} inside {1..4}\{f}.  A thickened pants has faces 1..2, each
// carrying curve slots 0..2.  Cylinder slots: kPairs indices 0..5 for a
// block, 0..2 for a thickened pants.  A torus traversal is the cyclic list
// of cylinder visits (block id, slot); consecutive visits are joined by a
// pants crossing whose interface is determined by the face ends.
struct GluingGraph {
    struct Piece {
        int id = 0;
        PieceKind kind = PieceKind::DBlock;
    };
    struct Interface {
        int id = 0;
        std::pair<int, int> left;   // (block id, face)
        std::pair<int, int> right;  // (block id, face)
    };
    struct Torus {
        int id = 0;
        std::vector<std::pair<int, int>> traversal;  // (block id, slot)
    };

    ManifoldKind kind = ManifoldKind::Fsl;
    std::vector<Piece> blocks;
    std::vector<Interface> interfaces;
    std::vector<Torus> tori;
};

// Per-torus geometric parameter: half cone-angle alpha_j (fsl, meridian
// holonomy u_m = 2 i alpha) or edge length l_j (doubles, longitude holonomy
// u_l = 2 l).  Complex values arise during Newton continuation.
struct CharacterPoint {
    ManifoldKind kind = ManifoldKind::Fsl;
    std::vector<Complex> params;  // one per torus, in tori order

    Complex meridian_holonomy(int torus_index) const;   // fsl: 2 i alpha
    Complex longitude_native(int torus_index) const;    // doubles: 2 l
};

// Resolved incidence data shared by mv_matrices and assemble_torsion.
struct ResolvedGraph {
    int n = 0, p = 0, c = 0, d = 0;
    // one row per block curve: (block index, slot)
    std::vector<std::pair<int, int>> rows;
    struct Crossing {
        int interface_index = 0;
        int row_from = 0, row_to = 0;      // block-curve rows joined
        int block_from = 0, block_to = 0;  // block indices (list order)
        int torus_index = 0;
    };
    std::vector<Crossing> crossings;       // one per pants curve (3p total)
    // per block, slot -> torus index
    std::vector<std::vector<int>> component_map;
};

// Validates the graph invariants (p = c + 2d, every face glued exactly
// once, traversals partition the cylinder slots and close up through the
// interfaces) and resolves the incidence structure.
ResolvedGraph resolve_graph(const GluingGraph& g);

struct MvMatrices {
    ResolvedGraph resolved;
    // integer matrices of the 4-term Mayer-Vietoris sequence
    Mat connecting;  // H_2(M) -> sum H_1(P_j), (3p) x n
    Mat delta;       // sum H_1(P_j) -> sum H_1(D_k), (3c+6d) x (3p)
    Mat eps;         // sum H_1(D_k) -> H_1(M), n x (3c+6d)
    // the sequence as an acyclic based complex; H_1(M) sits in degree 3,
    // H_2(M) in degree 6 (the long-exact-sequence degree convention)
    BasedChainComplex seq;
};

// Builds the combinatorial Mayer-Vietoris sequence; entries in {0,+-1},
// each row of delta has exactly two nonzero entries, each row of the
// connecting map exactly one.  Exactness is verified by rank counts.
MvMatrices mv_matrices(const GluingGraph& g);

enum class AssemblyMethod { Closed, Mv, Both };

struct AssemblyReport {
    int n = 0, p = 0, c = 0, d = 0;
    TorsionValue closed_form;               // +-2^{3d} prod sqrt(det G_k)
    TorsionValue mv_value;                  // prod Tor(D)/(prod Tor(P) Tor(H))
    TorsionValue tor_h;                     // +-1
    double residual = 0.0;                  // mod-sign distance of the two
    std::vector<Complex> block_gram_dets;   // per D-block
};

// Torsion of the assembled manifold with respect to the meridian system
// (fsl) or the preferred longitudes (doubles).
AssemblyReport assemble_torsion(const GluingGraph& g, const CharacterPoint& chi,
                                AssemblyMethod method = AssemblyMethod::Both);

// Logarithmic holonomy of the longitudes.  Doubles: exactly 2 l_j.  Fsl
// (model choice): the sum over the torus traversal of the complex edge
// lengths of the traversed block edges.
std::vector<Complex> longitude_holonomy(const GluingGraph& g, const CharacterPoint& chi);

// Cone angles of the doubles case: theta_j = sum over the traversal of
// twice the dihedral angle of the traversed edge.
std::vector<Complex> cone_angles(const GluingGraph& g, const CharacterPoint& chi);

struct CurveSystem {
    // u_mu = p * u_m + q * u_l per torus; (p,q) != (0,0)
    std::vector<std::pair<int, int>> pq;
};

struct ChangeOfCurvesReport {
    TorsionValue base;        // torsion in the native system
    Mat jacobian;             // d u_mu / d u_native
    Complex jacobian_det{};
    TorsionValue value;       // det(J) * base
    double fd_relative_error = 0.0;  // step-halving consistency of the FD Jacobian
};

// Change-of-curves evaluation: the native system is the meridians
// (fsl) resp. the preferred longitudes (doubles), the Jacobian is computed
// by central finite differences with Richardson step-halving.
ChangeOfCurvesReport change_of_curves(const GluingGraph& g, const CharacterPoint& chi,
                                      const CurveSystem& curves,
                                      AssemblyMethod method = AssemblyMethod::Closed);

// Surgery formula post-processing: T * prod_j 1/(4 sinh^2(u_gamma_j / 2)).
TorsionValue surgery_apply(const TorsionValue& t_mu, const std::vector<Complex>& u_gamma);

struct FillingResult {
    CharacterPoint chi;
    int iterations = 0;
    double residual_inf = 0.0;
};

// Damped Newton solve of p_j u_m(j) + q_j u_l(j) = 2 pi i per torus,
// starting from chi0.  No geometricity claim is made for the solution.
FillingResult solve_filling(const GluingGraph& g, const CurveSystem& curves,
                            const CharacterPoint& chi0, int max_iterations = 100,
                            double target = 1e-10);

}  // namespace torsionforge
