#include <benchmark/benchmark.h>

#include "phasespace/functionals.hpp"
#include "phasespace/inequalities.hpp"
#include "phasespace/probe.hpp"

using namespace phasespace;

namespace {

const double kHbar = 1.0;

static void BM_WignerPure(benchmark::State& state) {
  const GridSpec1D grid = default_axis(kHbar, static_cast<int>(state.range(0)));
  const Ket k = fock(3, grid, kHbar);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_pure(k));
  state.SetItemsProcessed(state.iterations() * grid.size() * grid.size());
}
BENCHMARK(BM_WignerPure)->Arg(128)->Arg(256)->Arg(512);

static void BM_Ambiguity(benchmark::State& state) {
  const GridSpec1D grid = default_axis(kHbar, static_cast<int>(state.range(0)));
  const Ket f = fock(0, grid, kHbar), g = fock(1, grid, kHbar);
  for (auto _ : state) benchmark::DoNotOptimize(ambiguity(f, g));
}
BENCHMARK(BM_Ambiguity)->Arg(128)->Arg(256)->Arg(512);

static void BM_WignerEntropy(benchmark::State& state) {
  const GridSpec1D grid = default_axis(kHbar, static_cast<int>(state.range(0)));
  const WignerField w = wigner_pure(fock(2, grid, kHbar));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_entropy(w));
}
BENCHMARK(BM_WignerEntropy)->Arg(256)->Arg(512);

static void BM_RelationCheck(benchmark::State& state) {
  const GridSpec1D grid = default_axis(kHbar, static_cast<int>(state.range(0)));
  const Ket f = fock(1, grid, kHbar);
  for (auto _ : state) benchmark::DoNotOptimize(relation_check(f, f));
}
BENCHMARK(BM_RelationCheck)->Arg(128)->Arg(256);

static void BM_EntropyBoundCheck(benchmark::State& state) {
  const GridSpec1D grid = default_axis(kHbar, 512);
  const MixedState rho = MixedState::spectral(
      {{0.5, fock(0, grid, kHbar)}, {0.5, fock(1, grid, kHbar)}});
  for (auto _ : state) benchmark::DoNotOptimize(check_entropy_bound(rho));
}
BENCHMARK(BM_EntropyBoundCheck);

}  // namespace

BENCHMARK_MAIN();
