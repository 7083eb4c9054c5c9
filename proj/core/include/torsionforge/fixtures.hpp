#pragma once

#include "torsionforge/assembly.hpp"

#include <random>

namespace torsionforge {

struct Fixture {
    GluingGraph graph;
    CharacterPoint character;
};

// One D-block self-glued through two thickened pairs of pants; n = 3
// components: {e12}, {e34} and {e13, e24, e14, e23}.  Angle consistency
// needs a + 2c < pi and b + 2c < pi.
Fixture d1_fixture(double alpha_a = std::numbers::pi / 4,
                   double alpha_b = std::numbers::pi / 4,
                   double alpha_c = std::numbers::pi / 4);

// Same gluing with the faces paired (1,4) and (2,3): n = 4 components
// {e12, e34}, {e13, e24}, {e14}, {e23} (two opposite-edge pairs).
Fixture d1_opposite_fixture(double alpha_pair1 = std::numbers::pi / 4,
                            double alpha_pair2 = std::numbers::pi / 4,
                            double alpha_single1 = std::numbers::pi / 4,
                            double alpha_single2 = std::numbers::pi / 4);

// Two (dual) D-blocks glued along all four faces pairwise, c = 0, n = 6;
// params in kPairs order are the per-component half-angles resp. lengths.
Fixture d2_fixture(ManifoldKind kind, const std::array<double, 6>& params);

// the same graphs with the blocks and interfaces listed in a permuted order
GluingGraph permute_blocks(const GluingGraph& g, const std::vector<int>& block_order);
GluingGraph permute_interfaces(const GluingGraph& g, const std::vector<int>& interface_order);
// note: permuting tori also permutes the character parameters
Fixture permute_tori(const Fixture& f, const std::vector<int>& torus_order);

// Random decomposition with d (dual) D-blocks and c thickened pants: faces
// paired uniformly at random (no block to itself), random curve bijections
// per interface, tori derived by orbit tracing.  Every torus carries the
// same parameter, which keeps all block shapes valid.
Fixture random_fixture(std::mt19937_64& rng, int d, int c, ManifoldKind kind,
                       double parameter);

}  // namespace torsionforge
