#include <benchmark/benchmark.h>

#include <random>

#include "hyperglue/homology.hpp"
#include "hyperglue/search.hpp"
#include "hyperglue/smith.hpp"

using namespace hyperglue;

namespace {

constexpr const char* reference_code = "GW8dNEEdN4ZJO1k2l1PIY";

void BM_FaceLattice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(face_lattice(build_P(n)).faces().size());
}
BENCHMARK(BM_FaceLattice)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_CheckProper(benchmark::State& state) {
  const auto sys = SidePairingSystem::expand(PairingCode(6, reference_code));
  for (auto _ : state) benchmark::DoNotOptimize(check_proper(sys).manifold());
}
BENCHMARK(BM_CheckProper)->Unit(benchmark::kMillisecond);

void BM_SmithDense(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> entry(-4, 4);
  std::vector<std::vector<long long>> a(size, std::vector<long long>(size));
  for (auto& row : a)
    for (auto& v : row) v = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a).rank);
}
BENCHMARK(BM_SmithDense)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

void BM_QuotientHomology(benchmark::State& state) {
  const auto sys = SidePairingSystem::expand(PairingCode(6, reference_code));
  const SymmetryAction act = SymmetryAction::decompose(polytope(6), builtin_sigma(6));
  const ChainComplex cc = chain_complex(build_glued(sys, &act, true));
  for (auto _ : state) benchmark::DoNotOptimize(homology(cc).size());
}
BENCHMARK(BM_QuotientHomology)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_SeedSearch(benchmark::State& state) {
  SearchOptions o;
  o.n = 6;
  o.sigma = builtin_sigma(6);
  o.restriction_seed = decode(PairingCode(5, "8G4JB77JB21"));
  for (auto _ : state) benchmark::DoNotOptimize(search(o).codes.size());
}
BENCHMARK(BM_SeedSearch)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
BENCHMARK_MAIN();
