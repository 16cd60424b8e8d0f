/**
 * Microbenchmarks of the hot paths: wave-vector synthesis, dispersion
 * evaluation, both stepping backends, and Fock-algebra construction.
 */
#include "qca/lattice.hpp"
#include "qca/maxwell.hpp"
#include "qca/models.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace qca;

lattice::SpinorField random_field(const IVec& shape, int spin, std::uint64_t seed) {
    lattice::SpinorField f = lattice::zero_field(shape, spin);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (std::int64_t i = 0; i < f.data.size(); ++i)
        f.data[i] = cplx(gauss(rng), gauss(rng));
    f.data /= f.norm();
    return f;
}

void BM_BuildAk(benchmark::State& state) {
    const auto rule = models::weyl_rule(models::weyl3d());
    const RVec k = rvec({0.3, -0.2, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(kspace::build_ak(rule, k));
}
BENCHMARK(BM_BuildAk);

void BM_Dispersion(benchmark::State& state) {
    const auto rule = models::weyl_rule(models::weyl3d());
    const auto bz = kspace::brillouin_zone(rule);
    std::mt19937_64 rng(42);
    for (auto _ : state) benchmark::DoNotOptimize(kspace::dispersion(rule, bz.sample(rng)));
}
BENCHMARK(BM_Dispersion);

void BM_InterpolatingHamiltonian(benchmark::State& state) {
    const auto rule = models::dirac_rule({0.4, models::weyl3d()});
    const auto bz = kspace::brillouin_zone(rule);
    std::mt19937_64 rng(42);
    for (auto _ : state)
        benchmark::DoNotOptimize(kspace::interpolating_hamiltonian(rule, bz.sample(rng)));
}
BENCHMARK(BM_InterpolatingHamiltonian);

void BM_StepSpectralLine(benchmark::State& state) {
    const auto rule = models::weyl_rule(models::weyl1d());
    const auto field = random_field(ivec({4096}), rule.spin, 7);
    for (auto _ : state) benchmark::DoNotOptimize(lattice::step_spectral(rule, field));
}
BENCHMARK(BM_StepSpectralLine);

void BM_StepSpectralBcc(benchmark::State& state) {
    const auto rule = models::weyl_rule(models::weyl3d());
    const auto field = random_field(ivec({32, 32, 32}), rule.spin, 7);
    for (auto _ : state) benchmark::DoNotOptimize(lattice::step_spectral(rule, field));
}
BENCHMARK(BM_StepSpectralBcc);

void BM_StepDirectBcc(benchmark::State& state) {
    const auto rule = models::weyl_rule(models::weyl3d());
    const auto field = random_field(ivec({32, 32, 32}), rule.spin, 7);
    for (auto _ : state) benchmark::DoNotOptimize(lattice::step_direct(rule, field));
}
BENCHMARK(BM_StepDirectBcc);

void BM_FockBuild(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(maxwell::build_fock(6));
}
BENCHMARK(BM_FockBuild);

void BM_CommutatorDeviation(benchmark::State& state) {
    const auto fock = maxwell::build_fock(4);
    const maxwell::Vec3 u1(1, 0, 0), u2(0, 1, 0), n(0, 0, 1);
    const auto [g1, g2] =
        maxwell::polarization_ops(fock, maxwell::SmearingProfile{2}, u1, u2, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(maxwell::boson_commutator_deviation(fock, g1, g2, 1));
}
BENCHMARK(BM_CommutatorDeviation);

}  // namespace

BENCHMARK_MAIN();
