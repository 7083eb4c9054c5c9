#include "torsionforge/assembly.hpp"

#include "torsionforge/gram.hpp"
#include "torsionforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace torsionforge {

namespace {

constexpr double pi = std::numbers::pi;

int slot_count(PieceKind k) { return k == PieceKind::ThickenedPants ? 3 : 6; }

// the two faces a cylinder slot runs between
std::pair<int, int> slot_faces(PieceKind kind, int slot) {
    if (kind == PieceKind::ThickenedPants) return {1, 2};
    const auto [j, k] = kPairs[slot];
    return complementary_pair(j, k);
}

struct FaceRef {
    int interface_index;
    int other_block;  // block index on the far side
    int other_face;
};

double real_or_throw(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z.real()))) {
        std::ostringstream os;
        os << what << ": parameter " << z << " is not real";
        throw InvalidInputError(os.str());
    }
    return z.real();
}

}  // namespace

Complex CharacterPoint::meridian_holonomy(int torus_index) const {
    if (kind != ManifoldKind::Fsl)
        throw InvalidInputError("meridian_holonomy: native only for fsl characters");
    return Complex(0.0, 2.0) * params.at(torus_index);
}

Complex CharacterPoint::longitude_native(int torus_index) const {
    if (kind != ManifoldKind::Double)
        throw InvalidInputError("longitude_native: native only for double characters");
    return 2.0 * params.at(torus_index);
}

ResolvedGraph resolve_graph(const GluingGraph& g) {
    ResolvedGraph out;
    const int nb = static_cast<int>(g.blocks.size());
    std::map<int, int> block_index;
    for (int i = 0; i < nb; ++i) {
        if (!block_index.emplace(g.blocks[i].id, i).second)
            throw InvalidInputError("gluing graph: duplicate block id");
        const PieceKind k = g.blocks[i].kind;
        if (g.kind == ManifoldKind::Fsl && k == PieceKind::DualDBlock)
            throw InvalidInputError("gluing graph: dual block in an fsl graph");
        if (g.kind == ManifoldKind::Double && k == PieceKind::DBlock)
            throw InvalidInputError("gluing graph: fsl block in a doubles graph");
        if (k == PieceKind::ThickenedPants)
            ++out.c;
        else
            ++out.d;
    }
    if (out.d < 1) throw InvalidInputError("gluing graph: no D-block (d = 0)");
    out.p = static_cast<int>(g.interfaces.size());
    out.n = static_cast<int>(g.tori.size());
    if (out.p != out.c + 2 * out.d) {
        std::ostringstream os;
        os << "gluing graph: p = c + 2d violated (p=" << out.p << ", c=" << out.c
           << ", d=" << out.d << ")";
        throw InvalidInputError(os.str());
    }

    // face -> interface resolution; every face glued exactly once
    std::map<std::pair<int, int>, FaceRef> face_map;  // (block index, face)
    for (int ii = 0; ii < out.p; ++ii) {
        const auto& itf = g.interfaces[ii];
        auto side = [&](std::pair<int, int> ref) {
            auto it = block_index.find(ref.first);
            if (it == block_index.end())
                throw InvalidInputError("gluing graph: interface references unknown block");
            const int bi = it->second;
            const int nfaces = g.blocks[bi].kind == PieceKind::ThickenedPants ? 2 : 4;
            if (ref.second < 1 || ref.second > nfaces)
                throw InvalidInputError("gluing graph: interface face out of range");
            return std::pair<int, int>{bi, ref.second};
        };
        const auto l = side(itf.left);
        const auto r = side(itf.right);
        if (l.first == r.first)
            throw InvalidInputError(
                "gluing graph: block glued to itself; insert a thickened pants");
        if (!face_map.emplace(l, FaceRef{ii, r.first, r.second}).second ||
            !face_map.emplace(r, FaceRef{ii, l.first, l.second}).second)
            throw InvalidInputError("gluing graph: face appears in more than one interface");
    }
    for (int bi = 0; bi < nb; ++bi) {
        const int nfaces = g.blocks[bi].kind == PieceKind::ThickenedPants ? 2 : 4;
        for (int f = 1; f <= nfaces; ++f)
            if (!face_map.count({bi, f}))
                throw InvalidInputError("gluing graph: unglued block face");
    }

    // rows: one per cylinder slot
    out.component_map.resize(nb);
    std::map<std::pair<int, int>, int> row_of;
    for (int bi = 0; bi < nb; ++bi) {
        const int ns = slot_count(g.blocks[bi].kind);
        out.component_map[bi].assign(ns, -1);
        for (int s = 0; s < ns; ++s) {
            row_of[{bi, s}] = static_cast<int>(out.rows.size());
            out.rows.push_back({bi, s});
        }
    }

    // walk every torus, resolving the crossings
    for (int ti = 0; ti < out.n; ++ti) {
        const auto& traversal = g.tori[ti].traversal;
        if (traversal.empty()) throw InvalidInputError("gluing graph: empty torus traversal");
        const int m = static_cast<int>(traversal.size());
        std::vector<std::pair<int, int>> visits;  // (block index, slot)
        for (const auto& [bid, slot] : traversal) {
            auto it = block_index.find(bid);
            if (it == block_index.end())
                throw InvalidInputError("gluing graph: traversal references unknown block");
            const int bi = it->second;
            if (slot < 0 || slot >= slot_count(g.blocks[bi].kind))
                throw InvalidInputError("gluing graph: traversal slot out of range");
            if (out.component_map[bi][slot] != -1)
                throw InvalidInputError("gluing graph: cylinder slot traversed twice");
            out.component_map[bi][slot] = ti;
            visits.push_back({bi, slot});
        }

        // choose the orientation of the walk: the first visit exits through
        // one of its two face ends; propagate and close up
        auto try_walk = [&](int first_exit) -> std::optional<std::vector<ResolvedGraph::Crossing>> {
            std::vector<ResolvedGraph::Crossing> cr;
            int exit_face = first_exit;
            int entry0 = -1;
            for (int i = 0; i < m; ++i) {
                const auto [bi, slot] = visits[i];
                const auto [fa, fb] = slot_faces(g.blocks[bi].kind, slot);
                if (i == 0)
                    entry0 = (exit_face == fa) ? fb : fa;
                const FaceRef ref = face_map.at({bi, exit_face});
                const auto [nbi, nslot] = visits[(i + 1) % m];
                if (ref.other_block != nbi) return std::nullopt;
                const auto [nfa, nfb] = slot_faces(g.blocks[nbi].kind, nslot);
                if (ref.other_face != nfa && ref.other_face != nfb) return std::nullopt;
                // the next visit enters through ref.other_face
                int next_exit = (ref.other_face == nfa) ? nfb : nfa;
                if (i + 1 == m && ref.other_face != entry0) return std::nullopt;
                ResolvedGraph::Crossing x;
                x.interface_index = ref.interface_index;
                x.row_from = row_of.at({bi, slot});
                x.row_to = row_of.at({nbi, nslot});
                x.block_from = bi;
                x.block_to = nbi;
                x.torus_index = ti;
                cr.push_back(x);
                exit_face = next_exit;
            }
            return cr;
        };
        const auto [f0a, f0b] = slot_faces(g.blocks[visits[0].first].kind, visits[0].second);
        auto walk = try_walk(f0a);
        if (!walk) walk = try_walk(f0b);
        if (!walk) {
            std::ostringstream os;
            os << "gluing graph: torus " << g.tori[ti].id
               << " traversal does not close up through the interfaces";
            throw InvalidInputError(os.str());
        }
        for (const auto& x : *walk) out.crossings.push_back(x);
    }

    // every cylinder slot must belong to exactly one torus
    for (int bi = 0; bi < nb; ++bi)
        for (int s = 0; s < slot_count(g.blocks[bi].kind); ++s)
            if (out.component_map[bi][s] == -1)
                throw InvalidInputError("gluing graph: cylinder slot not covered by any torus");

    // each interface carries exactly three pants curves
    std::vector<int> per_interface(out.p, 0);
    for (const auto& x : out.crossings) ++per_interface[x.interface_index];
    for (int ii = 0; ii < out.p; ++ii)
        if (per_interface[ii] != 3)
            throw InvalidInputError("gluing graph: interface does not carry exactly 3 curves");

    if (static_cast<int>(out.crossings.size()) != 3 * out.p)
        throw InvalidInputError("gluing graph: crossing count mismatch");
    return out;
}

MvMatrices mv_matrices(const GluingGraph& g) {
    MvMatrices out;
    out.resolved = resolve_graph(g);
    const auto& r = out.resolved;
    const int nrows = static_cast<int>(r.rows.size());  // 3c + 6d
    const int ncols = static_cast<int>(r.crossings.size());

    out.delta = Mat::Zero(nrows, ncols);
    out.connecting = Mat::Zero(ncols, r.n);
    out.eps = Mat::Zero(r.n, nrows);

    for (int ci = 0; ci < ncols; ++ci) {
        const auto& x = r.crossings[ci];
        // +1 into the block earlier in the ordering, -1 into the later one
        if (x.block_from < x.block_to) {
            out.delta(x.row_from, ci) += 1.0;
            out.delta(x.row_to, ci) -= 1.0;
        } else {
            out.delta(x.row_to, ci) += 1.0;
            out.delta(x.row_from, ci) -= 1.0;
        }
        // connecting sign: + when the earlier block along the longitude has
        // the larger ordering index
        out.connecting(ci, x.torus_index) = (x.block_from > x.block_to) ? 1.0 : -1.0;
    }
    for (int row = 0; row < nrows; ++row) {
        const auto [bi, slot] = r.rows[row];
        out.eps(r.component_map[bi][slot], row) = 1.0;
    }

    // exactness by rank counts
    const int rank_delta = linalg::rank(out.delta);
    const int rank_conn = linalg::rank(out.connecting);
    const int rank_eps = linalg::rank(out.eps);
    std::ostringstream problems;
    if (rank_conn != r.n) problems << " rank(connecting)=" << rank_conn << "!=" << r.n << ";";
    if (rank_delta != 3 * r.p - r.n)
        problems << " rank(delta)=" << rank_delta << "!=" << (3 * r.p - r.n) << ";";
    if (rank_eps != r.n) problems << " rank(eps)=" << rank_eps << "!=" << r.n << ";";
    if ((out.delta * out.connecting).cwiseAbs().maxCoeff() > 1e-12)
        problems << " delta o connecting != 0;";
    if ((out.eps * out.delta).cwiseAbs().maxCoeff() > 1e-12) problems << " eps o delta != 0;";
    if (!problems.str().empty())
        throw VerificationError("mv_matrices: sequence not exact:" + problems.str());

    out.seq = BasedChainComplex::make({0, 0, 0, r.n, nrows, ncols, r.n});
    out.seq.boundary[4] = out.eps;
    out.seq.boundary[5] = out.delta;
    out.seq.boundary[6] = out.connecting;
    return out;
}

namespace {

// per-block parameter tuples pulled from the tori through the component map
std::vector<std::vector<Complex>> block_parameters(const GluingGraph& g, const ResolvedGraph& r,
                                                   const CharacterPoint& chi) {
    if (static_cast<int>(chi.params.size()) != r.n)
        throw InvalidInputError("character point: one parameter per torus required");
    if (chi.kind != g.kind)
        throw InvalidInputError("character point: manifold kind mismatch");
    std::vector<std::vector<Complex>> out(g.blocks.size());
    for (std::size_t bi = 0; bi < g.blocks.size(); ++bi) {
        const int ns = slot_count(g.blocks[bi].kind);
        out[bi].resize(ns);
        for (int s = 0; s < ns; ++s) out[bi][s] = chi.params[r.component_map[bi][s]];
    }
    return out;
}

TetShape block_shape_real(ManifoldKind kind, const std::vector<Complex>& params,
                          const char* what) {
    std::array<double, 6> v{};
    for (int i = 0; i < 6; ++i) v[i] = real_or_throw(params[i], what);
    return kind == ManifoldKind::Fsl ? TetShape::from_angles(v) : TetShape::from_lengths(v);
}

}  // namespace

AssemblyReport assemble_torsion(const GluingGraph& g, const CharacterPoint& chi,
                                AssemblyMethod method) {
    const MvMatrices mv = mv_matrices(g);
    const auto& r = mv.resolved;
    AssemblyReport rep;
    rep.n = r.n;
    rep.p = r.p;
    rep.c = r.c;
    rep.d = r.d;

    const auto params = block_parameters(g, r, chi);

    if (method != AssemblyMethod::Mv) {
        // the closed form is analytic in the Gram argument and is evaluated
        // formally at complex (e.g. Newton-solved) characters as well
        Complex prod(1.0, 0.0);
        for (std::size_t bi = 0; bi < g.blocks.size(); ++bi) {
            if (g.blocks[bi].kind == PieceKind::ThickenedPants) continue;
            std::array<Complex, 6> u{};
            for (int s = 0; s < 6; ++s)
                u[s] = g.kind == ManifoldKind::Fsl ? Complex(0.0, 1.0) * params[bi][s]
                                                   : params[bi][s];
            const Complex det = gram(TetShape::mixed(u)).determinant();
            rep.block_gram_dets.push_back(det);
            prod *= std::sqrt(det);
        }
        rep.closed_form = {std::pow(2.0, 3 * r.d) * prod};
    }

    if (method != AssemblyMethod::Closed) {
        rep.tor_h = exact_sequence_torsion(mv.seq);
        Complex value(1.0, 0.0);
        for (std::size_t bi = 0; bi < g.blocks.size(); ++bi) {
            if (g.blocks[bi].kind == PieceKind::ThickenedPants) {
                const PantsGeometry pg =
                    g.kind == ManifoldKind::Fsl
                        ? PantsGeometry::cone(real_or_throw(params[bi][0], "assemble"),
                                              real_or_throw(params[bi][1], "assemble"),
                                              real_or_throw(params[bi][2], "assemble"))
                        : PantsGeometry::boundary(real_or_throw(params[bi][0], "assemble"),
                                                  real_or_throw(params[bi][1], "assemble"),
                                                  real_or_throw(params[bi][2], "assemble"));
                value *= pants_torsion(pg, TorsionMethod::Direct).direct.value;
            } else {
                const TetShape shape = block_shape_real(g.kind, params[bi], "assemble_torsion");
                const BlockGeometry bg = g.kind == ManifoldKind::Fsl ? BlockGeometry::fsl(shape)
                                                                     : BlockGeometry::dual(shape);
                value *= dblock_torsion(bg, TorsionMethod::Direct).direct.value;
            }
        }
        // interface pants: parameters of the three curves through each
        std::vector<std::array<Complex, 3>> itf_params(r.p);
        std::vector<int> fill(r.p, 0);
        for (const auto& x : r.crossings)
            itf_params[x.interface_index][fill[x.interface_index]++] =
                chi.params[x.torus_index];
        for (int ii = 0; ii < r.p; ++ii) {
            const auto& q = itf_params[ii];
            const PantsGeometry pg =
                g.kind == ManifoldKind::Fsl
                    ? PantsGeometry::cone(real_or_throw(q[0], "assemble"),
                                          real_or_throw(q[1], "assemble"),
                                          real_or_throw(q[2], "assemble"))
                    : PantsGeometry::boundary(real_or_throw(q[0], "assemble"),
                                              real_or_throw(q[1], "assemble"),
                                              real_or_throw(q[2], "assemble"));
            value /= pants_torsion(pg, TorsionMethod::Direct).direct.value;
        }
        value /= rep.tor_h.value;
        rep.mv_value = {value};
    }

    if (method == AssemblyMethod::Both)
        rep.residual = TorsionValue::distance(rep.closed_form, rep.mv_value);
    return rep;
}

std::vector<Complex> longitude_holonomy(const GluingGraph& g, const CharacterPoint& chi) {
    const ResolvedGraph r = resolve_graph(g);
    if (static_cast<int>(chi.params.size()) != r.n)
        throw InvalidInputError("longitude_holonomy: one parameter per torus required");
    std::vector<Complex> out(r.n, Complex(0.0, 0.0));

    if (g.kind == ManifoldKind::Double) {
        for (int t = 0; t < r.n; ++t) out[t] = 2.0 * chi.params[t];
        return out;
    }
    // fsl model: real edge-length sum over the traversed block edges
    const auto params = block_parameters(g, r, chi);
    std::vector<std::array<Complex, 6>> lengths(g.blocks.size());
    for (std::size_t bi = 0; bi < g.blocks.size(); ++bi) {
        if (g.blocks[bi].kind == PieceKind::ThickenedPants) continue;
        std::array<Complex, 6> u{};
        for (int i = 0; i < 6; ++i) u[i] = Complex(0.0, 1.0) * params[bi][i];
        lengths[bi] = lengths_from_gram_argument(u);
    }
    for (std::size_t bi = 0; bi < g.blocks.size(); ++bi) {
        if (g.blocks[bi].kind == PieceKind::ThickenedPants) continue;
        for (int s = 0; s < 6; ++s) out[r.component_map[bi][s]] += lengths[bi][s];
    }
    return out;
}

std::vector<Complex> cone_angles(const GluingGraph& g, const CharacterPoint& chi) {
    if (g.kind != ManifoldKind::Double)
        throw InvalidInputError("cone_angles: defined for the doubles case");
    const ResolvedGraph r = resolve_graph(g);
    const auto params = block_parameters(g, r, chi);
    std::vector<Complex> out(r.n, Complex(0.0, 0.0));
    for (std::size_t bi = 0; bi < g.blocks.size(); ++bi) {
        if (g.blocks[bi].kind == PieceKind::ThickenedPants) continue;
        std::array<Complex, 6> u{};
        for (int i = 0; i < 6; ++i) u[i] = params[bi][i];
        const auto angles = angles_from_gram_argument(u);
        // the doubled wedge contributes twice the dihedral angle
        for (int s = 0; s < 6; ++s) out[r.component_map[bi][s]] += 2.0 * angles[s];
    }
    return out;
}

namespace {

// u_mu as a function of the native coordinates (u_m for fsl, u_l for doubles)
std::vector<Complex> curve_holonomies(const GluingGraph& g, const CurveSystem& curves,
                                      const std::vector<Complex>& native) {
    const int n = static_cast<int>(native.size());
    CharacterPoint chi;
    chi.kind = g.kind;
    chi.params.resize(n);
    if (g.kind == ManifoldKind::Fsl) {
        for (int t = 0; t < n; ++t) chi.params[t] = native[t] / Complex(0.0, 2.0);
    } else {
        for (int t = 0; t < n; ++t) chi.params[t] = native[t] / 2.0;
    }
    std::vector<Complex> u_l(n), u_m(n);
    if (g.kind == ManifoldKind::Fsl) {
        u_l = longitude_holonomy(g, chi);
        for (int t = 0; t < n; ++t) u_m[t] = native[t];
    } else {
        const auto theta = cone_angles(g, chi);
        for (int t = 0; t < n; ++t) {
            u_l[t] = native[t];
            u_m[t] = Complex(0.0, 1.0) * theta[t];
        }
    }
    std::vector<Complex> out(n);
    for (int t = 0; t < n; ++t) {
        const auto [pp, qq] = curves.pq.at(t);
        if (pp == 0 && qq == 0)
            throw InvalidInputError("curve system: (p,q) = (0,0) is not a curve");
        out[t] = static_cast<double>(pp) * u_m[t] + static_cast<double>(qq) * u_l[t];
    }
    return out;
}

Mat fd_jacobian(const GluingGraph& g, const CurveSystem& curves,
                const std::vector<Complex>& native, double h) {
    const int n = static_cast<int>(native.size());
    Mat j(n, n);
    for (int t = 0; t < n; ++t) {
        auto up = native, dn = native;
        up[t] += h;
        dn[t] -= h;
        const auto fp = curve_holonomies(g, curves, up);
        const auto fm = curve_holonomies(g, curves, dn);
        for (int s = 0; s < n; ++s) j(s, t) = (fp[s] - fm[s]) / (2.0 * h);
    }
    return j;
}

std::vector<Complex> native_coordinates(const GluingGraph& g, const CharacterPoint& chi) {
    std::vector<Complex> native(chi.params.size());
    for (std::size_t t = 0; t < chi.params.size(); ++t)
        native[t] = (g.kind == ManifoldKind::Fsl) ? Complex(0.0, 2.0) * chi.params[t]
                                                  : 2.0 * chi.params[t];
    return native;
}

}  // namespace

ChangeOfCurvesReport change_of_curves(const GluingGraph& g, const CharacterPoint& chi,
                                      const CurveSystem& curves, AssemblyMethod method) {
    const ResolvedGraph r = resolve_graph(g);
    if (static_cast<int>(curves.pq.size()) != r.n)
        throw InvalidInputError("change_of_curves: one (p,q) per torus required");
    ChangeOfCurvesReport rep;
    const AssemblyReport base = assemble_torsion(
        g, chi, method == AssemblyMethod::Both ? AssemblyMethod::Both : method);
    rep.base = (method == AssemblyMethod::Mv) ? base.mv_value : base.closed_form;

    const auto native = native_coordinates(g, chi);
    double scale = 1.0;
    for (const Complex& z : native) scale = std::max(scale, std::abs(z));
    const double h = 1e-6 * scale;
    const Mat j_coarse = fd_jacobian(g, curves, native, h);
    const Mat j_fine = fd_jacobian(g, curves, native, h / 2.0);
    rep.jacobian = (4.0 * j_fine - j_coarse) / 3.0;  // Richardson extrapolation
    rep.fd_relative_error =
        (j_fine - j_coarse).cwiseAbs().maxCoeff() /
        std::max(1.0, rep.jacobian.cwiseAbs().maxCoeff());
    rep.jacobian_det = linalg::determinant(rep.jacobian);
    if (std::abs(rep.jacobian_det) < 1e-12)
        throw SolverError("change_of_curves: singular curve-system Jacobian");
    rep.value = {rep.jacobian_det * rep.base.value};
    return rep;
}

TorsionValue surgery_apply(const TorsionValue& t_mu, const std::vector<Complex>& u_gamma) {
    Complex value = t_mu.value;
    for (const Complex& u : u_gamma) {
        const Complex s = std::sinh(u / 2.0);
        if (std::abs(s) < 1e-12)
            throw InvalidInputError("surgery_apply: sinh(u_gamma/2) = 0 on a core curve");
        value /= 4.0 * s * s;
    }
    return {value};
}

FillingResult solve_filling(const GluingGraph& g, const CurveSystem& curves,
                            const CharacterPoint& chi0, int max_iterations, double target) {
    const ResolvedGraph r = resolve_graph(g);
    if (static_cast<int>(curves.pq.size()) != r.n)
        throw InvalidInputError("solve_filling: one (p,q) per torus required");
    const Complex target_value(0.0, 2.0 * pi);

    auto residual = [&](const std::vector<Complex>& native) {
        auto f = curve_holonomies(g, curves, native);
        for (Complex& z : f) z -= target_value;
        return f;
    };
    auto inf_norm = [](const std::vector<Complex>& v) {
        double m = 0.0;
        for (const Complex& z : v) m = std::max(m, std::abs(z));
        return m;
    };

    std::vector<Complex> native = native_coordinates(g, chi0);
    std::vector<Complex> f = residual(native);
    double fnorm = inf_norm(f);
    int iter = 0;
    while (fnorm >= target) {
        if (iter >= max_iterations) {
            std::ostringstream os;
            os << "solve_filling: no convergence after " << iter
               << " iterations (|F|_inf = " << fnorm << ")";
            throw SolverError(os.str());
        }
        double scale = 1.0;
        for (const Complex& z : native) scale = std::max(scale, std::abs(z));
        Mat j = fd_jacobian(g, curves, native, 1e-6 * scale);
        Eigen::PartialPivLU<Mat> lu(j);
        if (std::abs(lu.determinant()) < 1e-14)
            throw SolverError("solve_filling: singular Jacobian");
        Vec rhs(r.n);
        for (int t = 0; t < r.n; ++t) rhs(t) = f[t];
        const Vec step = lu.solve(rhs);

        double lambda = 1.0;
        bool accepted = false;
        for (int back = 0; back < 8; ++back, lambda /= 2.0) {
            std::vector<Complex> cand = native;
            for (int t = 0; t < r.n; ++t) cand[t] -= lambda * step(t);
            std::vector<Complex> fc;
            try {
                fc = residual(cand);
            } catch (const Error&) {
                continue;  // evaluation failed, damp further
            }
            const double cn = inf_norm(fc);
            if (cn < fnorm * (1.0 - 0.25 * lambda)) {
                native = std::move(cand);
                f = std::move(fc);
                fnorm = cn;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw SolverError("solve_filling: damped Newton step made no progress");
        ++iter;
    }

    FillingResult out;
    out.chi.kind = g.kind;
    out.chi.params.resize(r.n);
    for (int t = 0; t < r.n; ++t)
        out.chi.params[t] = (g.kind == ManifoldKind::Fsl) ? native[t] / Complex(0.0, 2.0)
                                                          : native[t] / 2.0;
    out.iterations = iter;
    out.residual_inf = fnorm;
    return out;
}

}  // namespace torsionforge
