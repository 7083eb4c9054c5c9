#include "torsionforge/assembly.hpp"
#include "torsionforge/blocks.hpp"
#include "torsionforge/fixtures.hpp"
#include "torsionforge/sampling.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace torsionforge;

namespace {
constexpr double pi = std::numbers::pi;
}

static void BM_GramDeterminant(benchmark::State& state) {
    ShapeSampler smp(1);
    const TetShape shape = smp.fsl_angles();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram(shape).determinant());
    }
}
BENCHMARK(BM_GramDeterminant);

static void BM_GramIdentity(benchmark::State& state) {
    ShapeSampler smp(2);
    const BlockGeometry g = BlockGeometry::fsl(smp.fsl_angles());
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_gram_identity(g).residual);
    }
}
BENCHMARK(BM_GramIdentity);

static void BM_PantsTorsionDirect(benchmark::State& state) {
    const PantsGeometry g = PantsGeometry::cone(pi / 4, pi / 5, pi / 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pants_torsion(g, TorsionMethod::Direct).direct.value);
    }
}
BENCHMARK(BM_PantsTorsionDirect);

static void BM_DBlockTorsionBoth(benchmark::State& state) {
    ShapeSampler smp(3);
    const BlockGeometry g = BlockGeometry::fsl(smp.fsl_angles());
    for (auto _ : state) {
        benchmark::DoNotOptimize(dblock_torsion(g, TorsionMethod::Both).residual);
    }
}
BENCHMARK(BM_DBlockTorsionBoth);

static void BM_AssembleD1Both(benchmark::State& state) {
    const Fixture f = d1_fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            assemble_torsion(f.graph, f.character, AssemblyMethod::Both).residual);
    }
}
BENCHMARK(BM_AssembleD1Both);

static void BM_SolveFillingNewton(benchmark::State& state) {
    const Fixture f = d1_fixture(pi / 4, pi / 4, pi / 6);
    CurveSystem curves;
    curves.pq = {{4, 0}, {4, 0}, {6, 0}};
    CharacterPoint chi = f.character;
    chi.params[0] += Complex(0.01, 0.004);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_filling(f.graph, curves, chi).iterations);
    }
}
BENCHMARK(BM_SolveFillingNewton);

BENCHMARK_MAIN();
