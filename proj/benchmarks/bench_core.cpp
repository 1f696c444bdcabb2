#include <benchmark/benchmark.h>

#include "stq/bch.hpp"
#include "stq/coherent.hpp"
#include "stq/functional.hpp"
#include "stq/quadrature.hpp"
#include "stq/spatiotemporal.hpp"

using namespace stq;

namespace {

void BM_FockSpaceCreate(benchmark::State& state) {
  const GridRef g = make_unit_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(FockSpace::create(g, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_FockSpaceCreate)->Args({1, 40})->Args({2, 24})->Args({3, 12});

void BM_CoherentExpansion(benchmark::State& state) {
  const FockSpace s = FockSpace::create(make_unit_grid(2), static_cast<int>(state.range(0)));
  const CoherentSpec a{Complex(0.6, 0.3), folded_spectrum(s.grid(), CVector::Constant(2, 1.0 / std::sqrt(2.0)))};
  for (auto _ : state) benchmark::DoNotOptimize(coherent_state(s, a, CoherentConstruction::expansion));
}
BENCHMARK(BM_CoherentExpansion)->Arg(12)->Arg(25);

void BM_StqState(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const FockSpace s = FockSpace::create(make_unit_grid(m), static_cast<int>(state.range(1)));
  const StqSpec spec{QuadKind::q, folded_real_spectrum(s.grid(), RVector::Constant(static_cast<Eigen::Index>(m), 0.3)),
                     std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(stq_state(s, spec));
}
BENCHMARK(BM_StqState)->Args({1, 40})->Args({2, 16})->Args({3, 10});

void BM_MehlerPartialSum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mehler_partial_sum(0.8, 0.4, -0.3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MehlerPartialSum)->Arg(40)->Arg(400);

void BM_NormalOrderClosed(benchmark::State& state) {
  const LieScalars sc{0.7, 1.3, Complex(0.4, 0.0)};
  for (auto _ : state) benchmark::DoNotOptimize(normal_order_h({1.0, -1.0, kI, 1.0}, 0.4, sc));
}
BENCHMARK(BM_NormalOrderClosed);

void BM_NormalOrderOde(benchmark::State& state) {
  const LieScalars sc{0.7, 1.3, Complex(0.4, 0.0)};
  for (auto _ : state) benchmark::DoNotOptimize(ode_oracle_h({1.0, -1.0, kI, 1.0}, 0.4, sc));
}
BENCHMARK(BM_NormalOrderOde);

void BM_WickMoment(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.grid = make_unit_grid(2);
  cfg.sample_count = static_cast<std::size_t>(state.range(0));
  cfg.seed = 1;
  const MomentSpec spec{{0, false}, {1, true}, {1, false}, {0, true}};
  for (auto _ : state) benchmark::DoNotOptimize(mc_wick_moment(cfg, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WickMoment)->Arg(10000)->Arg(100000);

void BM_CoherentResolution(benchmark::State& state) {
  const FockSpace s = FockSpace::create(make_unit_grid(1), 12);
  EnsembleConfig cfg;
  cfg.grid = s.grid();
  cfg.sample_count = 20000;
  cfg.seed = 1;
  cfg.workers = static_cast<unsigned>(state.range(0));
  ResolutionOptions o;
  o.block = 4;
  for (auto _ : state) benchmark::DoNotOptimize(mc_resolve_identity(s, cfg, ResolutionFamily::coherent, o));
}
BENCHMARK(BM_CoherentResolution)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
