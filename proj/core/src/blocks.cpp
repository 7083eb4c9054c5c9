#include "torsionforge/blocks.hpp"

#include "torsionforge/hyptrig.hpp"

#include <cmath>
#include <sstream>

namespace torsionforge {

namespace {

constexpr double kDegenerate = 1e-12;

void reject_degenerate(double factor, const char* what) {
    if (std::abs(factor) < kDegenerate) {
        std::ostringstream os;
        os << what << ": degenerate factor " << factor;
        throw InvalidShapeError(os.str());
    }
}

}  // namespace

PantsComplexData pants_complex(const PantsGeometry& g) {
    PantsComplexData out;
    out.holonomy = pants_holonomy(g);
    const auto& h = out.holonomy.g;
    for (int k = 0; k < 3; ++k) out.invariants[k] = invariant_vector(h[k].transpose());

    // spine: edges a_1, a_2, a_3; d a_1 = x1 - gamma_3^{-1} x2,
    // d a_2 = x1 - gamma_2 x2, d a_3 = x1 - x2
    const std::vector<Mat3> words = {adjoint_transpose(h[2].inverse()),
                                     adjoint_transpose(h[1]), Mat3::Identity()};
    const std::vector<Vec> lifts = {spine_lift(out.invariants[0], 0, 1, 3),
                                    spine_lift(out.invariants[1], 1, 2, 3),
                                    spine_lift(out.invariants[2], 0, 2, 3)};
    out.complex = twisted_graph_complex(words, lifts);
    return out;
}

BlockComplexData dblock_complex(const BlockGeometry& g) {
    BlockComplexData out;
    out.holonomy = block_holonomy(g);
    for (int i = 0; i < 6; ++i)
        out.invariants[i] = invariant_vector(out.holonomy.g[i].transpose());

    std::vector<Mat3> words;
    words.reserve(4);
    for (const Mat2& w : out.holonomy.spine_words) words.push_back(adjoint_transpose(w));

    // lifts I_jk (x) (a_j - a_k) over the six pairs
    std::vector<Vec> lifts;
    lifts.reserve(6);
    for (int i = 0; i < 6; ++i) {
        const auto [j, k] = kPairs[i];
        lifts.push_back(spine_lift(out.invariants[i], j - 1, k - 1, 4));
    }
    out.complex = twisted_graph_complex(words, lifts);
    return out;
}

BlockTorsionReport pants_torsion(const PantsGeometry& g, TorsionMethod method) {
    validate(g);
    BlockTorsionReport rep;
    const Complex i(0.0, 1.0);
    const double p1 = g.params[0], p2 = g.params[1], p3 = g.params[2];

    if (method != TorsionMethod::Direct) {
        if (g.kind == PantsKind::Cone) {
            for (double a : g.params) reject_degenerate(std::sin(a), "pants_torsion");
            rep.closed_form = {i / (16.0 * std::sin(p1) * std::sin(p2) * std::sin(p3))};
        } else {
            for (double l : g.params) reject_degenerate(std::sinh(l), "pants_torsion");
            rep.closed_form = {Complex(1.0 / (16.0 * std::sinh(p1) * std::sinh(p2) * std::sinh(p3)), 0.0)};
        }
    }
    if (method != TorsionMethod::Closed) {
        const PantsComplexData data = pants_complex(g);
        TorsionOptions opts;
        opts.expected_ranks = std::vector<int>{-1, 6};  // known boundary rank
        rep.direct = chain_torsion(data.complex, opts);
    }
    if (method == TorsionMethod::Both)
        rep.residual = TorsionValue::distance(rep.closed_form, rep.direct);
    return rep;
}

Complex s_invariant(const BlockGeometry& g, const std::array<int, 4>& facet_order) {
    validate(g);
    const BlockHolonomy h = block_holonomy(g);
    const auto [a, b, c, d] = facet_order;
    {
        std::array<bool, 5> seen{};
        for (int v : facet_order) {
            if (v < 1 || v > 4 || seen[v])
                throw InvalidInputError("s_invariant: facet_choice must be a permutation of 1..4");
            seen[v] = true;
        }
    }
    const Complex i(0.0, 1.0);
    auto sh = [&](int j, int k) { return std::sinh(h.short_edge[j][k]); };
    if (g.kind == BlockKind::Fsl) {
        auto ang = [&](int j, int k) { return g.shape.angle(j, k); };
        auto len = [&](int j, int k) { return h.derived[pair_index(j, k)]; };
        return i * std::sinh(len(c, d)) * sh(a, d) * sh(b, d) * std::sin(ang(a, d)) *
               std::sin(ang(b, d)) * std::sin(ang(c, d));
    }
    auto len = [&](int j, int k) { return g.shape.length(j, k); };
    auto ang = [&](int j, int k) { return h.derived[pair_index(j, k)]; };
    return i * std::sin(ang(c, d)) * sh(a, d) * sh(b, d) * std::sinh(len(a, d)) *
           std::sinh(len(b, d)) * std::sinh(len(c, d));
}

BlockTorsionReport dblock_torsion(const BlockGeometry& g, TorsionMethod method) {
    validate(g);
    BlockTorsionReport rep;
    const Complex i(0.0, 1.0);

    const BlockHolonomy h = block_holonomy(g);
    auto sh = [&](int j, int k) { return std::sinh(h.short_edge[j][k]); };

    if (method != TorsionMethod::Direct) {
        if (g.kind == BlockKind::Fsl) {
            auto ang = [&](int j, int k) { return g.shape.angle(j, k); };
            for (const auto& [j, k] : kPairs) reject_degenerate(std::sin(ang(j, k)), "dblock_torsion");
            const double l14 = h.derived[pair_index(1, 4)];
            rep.closed_form = {i * std::sinh(l14) * sh(2, 4) * sh(3, 4) /
                               (32.0 * std::sin(ang(1, 2)) * std::sin(ang(1, 3)) *
                                std::sin(ang(2, 3)))};
        } else {
            auto len = [&](int j, int k) { return g.shape.length(j, k); };
            for (const auto& [j, k] : kPairs) reject_degenerate(std::sinh(len(j, k)), "dblock_torsion");
            const double a14 = h.derived[pair_index(1, 4)];
            rep.closed_form = {i * std::sin(a14) * sh(2, 4) * sh(3, 4) /
                               (32.0 * std::sinh(len(1, 2)) * std::sinh(len(1, 3)) *
                                std::sinh(len(2, 3)))};
        }
    }
    if (method != TorsionMethod::Closed) {
        const BlockComplexData data = dblock_complex(g);
        TorsionOptions opts;
        opts.expected_ranks = std::vector<int>{-1, 6};  // known boundary rank
        rep.direct = chain_torsion(data.complex, opts);
    }
    rep.s_invariant = s_invariant(g);
    if (method == TorsionMethod::Both)
        rep.residual = TorsionValue::distance(rep.closed_form, rep.direct);
    return rep;
}

GramIdentityReport verify_gram_identity(const BlockGeometry& g) {
    validate(g);
    GramIdentityReport rep;
    const Complex s = s_invariant(g);
    rep.s_squared = s * s;
    rep.gram_det = gram(g.shape).determinant();
    rep.residual = std::abs(rep.s_squared - rep.gram_det) / std::max(1.0, std::abs(rep.gram_det));
    return rep;
}

}  // namespace torsionforge
