#include "torsionforge/fixtures.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace torsionforge {

namespace {

int slot(int j, int k) { return pair_index(j, k); }

}  // namespace

Fixture d1_fixture(double alpha_a, double alpha_b, double alpha_c) {
    Fixture f;
    GluingGraph& g = f.graph;
    g.kind = ManifoldKind::Fsl;
    g.blocks = {{1, PieceKind::DBlock}, {2, PieceKind::ThickenedPants},
                {3, PieceKind::ThickenedPants}};
    // D faces 1,2 run through the first thickened pants, faces 3,4 through
    // the second
    g.interfaces = {{1, {1, 1}, {2, 1}},
                    {2, {2, 2}, {1, 2}},
                    {3, {1, 3}, {3, 1}},
                    {4, {3, 2}, {1, 4}}};
    // components: A = {e12}, B = {e34}, C = {e13, e24, e14, e23}
    g.tori = {{1, {{1, slot(1, 2)}, {3, 0}}},
              {2, {{1, slot(3, 4)}, {2, 0}}},
              {3, {{1, slot(1, 3)}, {3, 1}, {1, slot(2, 4)}, {2, 1}, {1, slot(1, 4)}, {3, 2},
                   {1, slot(2, 3)}, {2, 2}}}};
    f.character.kind = ManifoldKind::Fsl;
    f.character.params = {alpha_a, alpha_b, alpha_c};
    return f;
}

Fixture d1_opposite_fixture(double alpha_pair1, double alpha_pair2, double alpha_single1,
                            double alpha_single2) {
    Fixture f;
    GluingGraph& g = f.graph;
    g.kind = ManifoldKind::Fsl;
    g.blocks = {{1, PieceKind::DBlock}, {2, PieceKind::ThickenedPants},
                {3, PieceKind::ThickenedPants}};
    // faces (1,4) through the first thickened pants, (2,3) through the second
    g.interfaces = {{1, {1, 1}, {2, 1}},
                    {2, {2, 2}, {1, 4}},
                    {3, {1, 2}, {3, 1}},
                    {4, {3, 2}, {1, 3}}};
    // components: {e12, e34}, {e13, e24}, {e14}, {e23}
    g.tori = {{1, {{1, slot(1, 2)}, {2, 0}, {1, slot(3, 4)}, {3, 0}}},
              {2, {{1, slot(1, 3)}, {2, 1}, {1, slot(2, 4)}, {3, 1}}},
              {3, {{1, slot(1, 4)}, {3, 2}}},
              {4, {{1, slot(2, 3)}, {2, 2}}}};
    f.character.kind = ManifoldKind::Fsl;
    f.character.params = {alpha_pair1, alpha_pair2, alpha_single1, alpha_single2};
    return f;
}

Fixture d2_fixture(ManifoldKind kind, const std::array<double, 6>& params) {
    Fixture f;
    GluingGraph& g = f.graph;
    g.kind = kind;
    const PieceKind pk = kind == ManifoldKind::Fsl ? PieceKind::DBlock : PieceKind::DualDBlock;
    g.blocks = {{1, pk}, {2, pk}};
    g.interfaces = {{1, {1, 1}, {2, 1}},
                    {2, {1, 2}, {2, 2}},
                    {3, {1, 3}, {2, 3}},
                    {4, {1, 4}, {2, 4}}};
    for (int i = 0; i < 6; ++i)
        g.tori.push_back({i + 1, {{1, i}, {2, i}}});
    f.character.kind = kind;
    f.character.params.assign(params.begin(), params.end());
    return f;
}

GluingGraph permute_blocks(const GluingGraph& g, const std::vector<int>& block_order) {
    GluingGraph out = g;
    out.blocks.clear();
    for (int i : block_order) out.blocks.push_back(g.blocks[i]);
    return out;
}

GluingGraph permute_interfaces(const GluingGraph& g, const std::vector<int>& interface_order) {
    GluingGraph out = g;
    out.interfaces.clear();
    for (int i : interface_order) out.interfaces.push_back(g.interfaces[i]);
    return out;
}

Fixture permute_tori(const Fixture& f, const std::vector<int>& torus_order) {
    Fixture out = f;
    out.graph.tori.clear();
    out.character.params.clear();
    for (int i : torus_order) {
        out.graph.tori.push_back(f.graph.tori[i]);
        out.character.params.push_back(f.character.params[i]);
    }
    return out;
}

namespace {

int piece_faces(PieceKind k) { return k == PieceKind::ThickenedPants ? 2 : 4; }
int piece_slots(PieceKind k) { return k == PieceKind::ThickenedPants ? 3 : 6; }

// curve slots carried by face f
std::vector<int> fixture_face_slots(PieceKind kind, int face) {
    if (kind == PieceKind::ThickenedPants) return {0, 1, 2};
    std::vector<int> out;
    for (int i = 0; i < 6; ++i) {
        const auto [j, k] = kPairs[i];
        if (j != face && k != face) out.push_back(i);
    }
    return out;
}

// the two faces a cylinder slot runs between
std::pair<int, int> fixture_slot_faces(PieceKind kind, int slot) {
    if (kind == PieceKind::ThickenedPants) return {1, 2};
    const auto [j, k] = kPairs[slot];
    std::pair<int, int> out{0, 0};
    for (int v = 1; v <= 4; ++v) {
        if (v == j || v == k) continue;
        (out.first == 0 ? out.first : out.second) = v;
    }
    return out;
}

}  // namespace

Fixture random_fixture(std::mt19937_64& rng, int d, int c, ManifoldKind kind, double parameter) {
    if (d < 1) throw InvalidInputError("random_fixture: need at least one D-block");
    // a self-pair-free face matching needs no block to own more than half
    // of all face slots: with one D-block that means c >= 2
    if (d == 1 && c < 2)
        throw InvalidInputError("random_fixture: d = 1 requires at least two thickened pants");
    Fixture f;
    GluingGraph& g = f.graph;
    g.kind = kind;
    const PieceKind dk = kind == ManifoldKind::Fsl ? PieceKind::DBlock : PieceKind::DualDBlock;
    for (int i = 0; i < d; ++i) g.blocks.push_back({i + 1, dk});
    for (int i = 0; i < c; ++i) g.blocks.push_back({d + i + 1, PieceKind::ThickenedPants});

    // random face pairing without block self-pairs; retry on a bad shuffle
    std::vector<std::pair<int, int>> faces;  // (block index, face)
    for (std::size_t bi = 0; bi < g.blocks.size(); ++bi)
        for (int face = 1; face <= piece_faces(g.blocks[bi].kind); ++face)
            faces.push_back({static_cast<int>(bi), face});
    for (int attempt = 0;; ++attempt) {
        if (attempt > 2000) throw InvalidInputError("random_fixture: no valid face pairing found");
        std::shuffle(faces.begin(), faces.end(), rng);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < faces.size(); i += 2)
            if (faces[i].first == faces[i + 1].first) ok = false;
        if (ok) break;
    }
    for (std::size_t i = 0; i + 1 < faces.size(); i += 2) {
        GluingGraph::Interface itf;
        itf.id = static_cast<int>(i / 2) + 1;
        itf.left = {g.blocks[faces[i].first].id, faces[i].second};
        itf.right = {g.blocks[faces[i + 1].first].id, faces[i + 1].second};
        g.interfaces.push_back(itf);
    }

    // random curve bijections per interface: end (block, face, slot) -> far end
    std::map<std::tuple<int, int, int>, std::tuple<int, int, int>> across;
    for (std::size_t i = 0; i + 1 < faces.size(); i += 2) {
        const auto [bl, fl] = faces[i];
        const auto [br, fr] = faces[i + 1];
        std::vector<int> ls = fixture_face_slots(g.blocks[bl].kind, fl);
        std::vector<int> rs = fixture_face_slots(g.blocks[br].kind, fr);
        std::shuffle(rs.begin(), rs.end(), rng);
        for (int q = 0; q < 3; ++q) {
            across[{bl, fl, ls[q]}] = {br, fr, rs[q]};
            across[{br, fr, rs[q]}] = {bl, fl, ls[q]};
        }
    }

    // orbit tracing: walk cylinders until each closes into a torus
    std::map<std::pair<int, int>, bool> visited;
    int torus_id = 0;
    for (std::size_t bi = 0; bi < g.blocks.size(); ++bi) {
        for (int s = 0; s < piece_slots(g.blocks[bi].kind); ++s) {
            if (visited[{static_cast<int>(bi), s}]) continue;
            GluingGraph::Torus torus;
            torus.id = ++torus_id;
            int cb = static_cast<int>(bi), cs = s;
            int exit_face = fixture_slot_faces(g.blocks[cb].kind, cs).second;
            for (;;) {
                visited[{cb, cs}] = true;
                torus.traversal.push_back({g.blocks[cb].id, cs});
                const auto [nb, nf, ns] = across.at({cb, exit_face, cs});
                const auto [fa, fb] = fixture_slot_faces(g.blocks[nb].kind, ns);
                const int next_exit = (nf == fa) ? fb : fa;
                cb = nb;
                cs = ns;
                exit_face = next_exit;
                if (cb == static_cast<int>(bi) && cs == s) break;
            }
            g.tori.push_back(torus);
        }
    }

    f.character.kind = kind;
    f.character.params.assign(g.tori.size(), Complex(parameter, 0.0));
    return f;
}

}  // namespace torsionforge
