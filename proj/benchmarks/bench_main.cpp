#include <benchmark/benchmark.h>

#include "mcf/curvature.hpp"
#include "mcf/flow.hpp"
#include "mcf/soliton.hpp"

namespace {

void BM_Curvature(benchmark::State& state) {
  mcf::Profile p =
      mcf::make_ellipsoid(2, 1.0, 1.5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto c = mcf::compute_curvatures(p);
    benchmark::DoNotOptimize(c.max_H());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Curvature)->Arg(201)->Arg(801)->Arg(3201);

void BM_FlowStep(benchmark::State& state) {
  mcf::Profile p =
      mcf::make_sphere(2, 1.0, static_cast<std::size_t>(state.range(0)));
  double dt = mcf::cfl_limit(p, 2);
  for (auto _ : state) {
    mcf::Profile q = mcf::step_mcf(p, dt, 2);
    benchmark::DoNotOptimize(q.value.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FlowStep)->Arg(201)->Arg(801)->Arg(3201);

void BM_TranslatorShoot(benchmark::State& state) {
  for (auto _ : state) {
    auto s = mcf::shoot_translator(2, 8.0, 4e-3);
    benchmark::DoNotOptimize(s.nodes.size());
  }
}
BENCHMARK(BM_TranslatorShoot);

}  // namespace

BENCHMARK_MAIN();
