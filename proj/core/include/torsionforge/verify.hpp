#pragma once

#include "torsionforge/assembly.hpp"
#include "torsionforge/sampling.hpp"
#include "torsionforge/torsion.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace torsionforge {

struct SweepResult {
    std::string name;
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<std::uint64_t> failing_seeds;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<SweepResult> results;
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return !results.empty();
    }
};

// sample seed for sample i under master seed (splitmix64 step)
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index);

// Seeded verification sweeps.  suite is one of "identities", "torsion",
// "mv", "multiplicativity" or "all".
VerifyReport run_verification(const std::string& suite, int samples, std::uint64_t seed);

// --- building blocks reused by the test suites ---

// random based complex with known homology lifts and invertible based
// change; degrees 0..2, small dimensions
struct RandomComplexSpec {
    std::vector<int> image_ranks;    // rank of boundary k (index 1..K)
    std::vector<int> homology_dims;  // per degree 0..K
};
BasedChainComplex random_based_complex(const RandomComplexSpec& spec, std::mt19937_64& rng);

// random short exact sequence 0 -> E -> F -> G -> 0 (F = E + G twisted by a
// random chain map), satisfying the +-1 lifted-basis condition, with
// homology lifts installed on all three complexes
struct ExactTriple {
    BasedChainComplex e, f, g;
    std::vector<Mat> fmap, gmap;
};
ExactTriple random_exact_triple(std::mt19937_64& rng);

}  // namespace torsionforge
