#pragma once

#include "torsionforge/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace torsionforge {

// Index pairs {j,k} of {1,2,3,4} in lexicographic order.
inline constexpr std::array<std::pair<int, int>, 6> kPairs = {
    {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

// position of {j,k} in kPairs
int pair_index(int j, int k);

// the complementary pair {s,t} = {1,2,3,4} \ {j,k}
std::pair<int, int> complementary_pair(int j, int k);

enum class ShapeKind { Angles, Lengths, Mixed };

// Six complex edge parameters u = (u12, u13, u14, u23, u24, u34).
// kind=Angles stores u_jk = i*alpha_jk, kind=Lengths stores u_jk = l_jk.
struct TetShape {
    std::array<Complex, 6> u{};
    ShapeKind kind = ShapeKind::Mixed;

    static TetShape from_angles(const std::array<double, 6>& alpha);
    static TetShape from_lengths(const std::array<double, 6>& lengths);
    static TetShape mixed(const std::array<Complex, 6>& u);

    Complex at(int j, int k) const { return u[pair_index(j, k)]; }
    double angle(int j, int k) const;   // requires kind == Angles
    double length(int j, int k) const;  // requires kind == Lengths
    std::array<double, 6> angles() const;
    std::array<double, 6> lengths() const;
};

// The Gram matrix function: unit diagonal, entry (j,k) = -cosh u_jk.
Mat4 gram(const TetShape& shape);

// st-cofactor (-1)^{s+t} det(minor_st); s,t in 1..4
Complex gram_cofactor(const Mat4& g, int s, int t);

struct HyperidealCheck {
    bool valid = false;
    // vertices (1..4) whose incident dihedral angles sum to >= pi
    std::vector<int> failing_vertices;
    std::vector<std::string> messages;
};

// A truncated hyperideal tetrahedron exists iff every dihedral angle lies in
// (0,pi) and at each vertex the three incident angles sum to < pi.  The
// angles incident to vertex v are alpha_jk for {j,k} inside {1..4}\{v}.
HyperidealCheck validate_hyperideal(const TetShape& shape);

// cosh l_jk = G^st / sqrt(G^ss G^tt) with {s,t} complementary to {j,k}
TetShape lengths_from_angles(const TetShape& shape);

// cos alpha_jk = G^st / sqrt(G^ss G^tt)
TetShape angles_from_lengths(const TetShape& shape);

// Analytic continuation of the angle->length conversion: accepts any complex
// 6-tuple u (interpreted as the Gram argument), principal branches, no
// validity checks.  Returns the six complex lengths in kPairs order.
std::array<Complex, 6> lengths_from_gram_argument(const std::array<Complex, 6>& u);

// Analytic continuation of the length->angle conversion: complex lengths in,
// complex dihedral angles out (principal branches).
std::array<Complex, 6> angles_from_gram_argument(const std::array<Complex, 6>& lengths);

}  // namespace torsionforge
