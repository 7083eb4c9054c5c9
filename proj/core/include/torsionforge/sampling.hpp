#pragma once

#include "torsionforge/rep.hpp"

#include <cstdint>
#include <random>

namespace torsionforge {

// Seeded generators for valid geometries, kept away from degenerations
// (margins of a few percent of pi resp. lower length cutoffs).
class ShapeSampler {
  public:
    explicit ShapeSampler(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    double uniform(double lo, double hi);
    Complex complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi);

    PantsGeometry pants_cone();
    PantsGeometry pants_boundary();
    TetShape fsl_angles();      // valid hyperideal angle shape
    TetShape dual_lengths();    // positive length shape
    Mat2 sl2();                 // random SL(2,C), moderate norm

  private:
    std::mt19937_64 rng_;
};

}  // namespace torsionforge
