#pragma once

#include "torsionforge/types.hpp"

namespace torsionforge {

// D_z = diag(e^{z/2}, e^{-z/2})
Mat2 dz(Complex z);

// S_s = [[cosh(s/2), sinh(s/2)], [sinh(s/2), cosh(s/2)]]
Mat2 ss(Complex s);

// arccosh on the principal real branch; arguments in [1-1e-12, 1) are
// clamped to 1, anything below is a domain error.
double acosh_clamped(double x);

// Side of a hyperbolic triangle opposite the angle alpha_opposite:
//   cosh s = (cos a_opp + cos a_adj1 cos a_adj2) / (sin a_adj1 sin a_adj2).
// Angles in radians, each in (0,pi), sum < pi.
double triangle_side(double alpha_opposite, double alpha_adj1, double alpha_adj2);

// Side of a right-angled hexagon opposite the side of length l_opposite:
//   cosh s = (cosh l_opp + cosh l_adj1 cosh l_adj2) / (sinh l_adj1 sinh l_adj2).
// Lengths > 0; always solvable.
double hexagon_side(double l_opposite, double l_adj1, double l_adj2);

// Analytic continuations (principal branches); no validity checks.
Complex triangle_side_c(Complex alpha_opposite, Complex alpha_adj1, Complex alpha_adj2);
Complex hexagon_side_c(Complex l_opposite, Complex l_adj1, Complex l_adj2);

}  // namespace torsionforge
