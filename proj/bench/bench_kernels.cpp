// OpenMP kernels against their serial references.
#include "arslie/extremals.hpp"
#include "arslie/fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace arslie;

namespace {

void locus_args(benchmark::internal::Benchmark* b) {
  for (int res : {21, 41, 81}) b->Arg(res);
}

template <auto Fn>
void bm_sample_locus(benchmark::State& state) {
  const SimpleArs ars = heisenberg_quadric(1, 2, 3, 1, -1, 0.5);
  const Box box = ars.chart().default_box();
  const int res = static_cast<int>(state.range(0));
  std::size_t found = 0;
  for (auto _ : state) {
    const auto pts = Fn(ars, box, res);
    found = pts.size();
    benchmark::DoNotOptimize(pts.data());
  }
  state.counters["points"] = static_cast<double>(found);
}

template <auto Fn>
void bm_wavefront(benchmark::State& state) {
  const SimpleArs ars = heisenberg_ideal(0.5);
  GroupPoint g0(3);
  g0 << 0.3, 0.0, 0.0;
  const int rays = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto r = Fn(ars, g0, 1.0, rays, 2e-3);
    benchmark::DoNotOptimize(r.data());
  }
  state.counters["rays"] = rays;
}

}  // namespace

BENCHMARK(bm_sample_locus<sample_locus>)->Apply(locus_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_sample_locus<sample_locus_serial>)->Apply(locus_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_wavefront<wavefront>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_wavefront<wavefront_serial>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
