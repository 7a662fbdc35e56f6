// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <vector>

#include "fas/montecarlo.hpp"

namespace {

using fas::mc::Generator;

// range(0): track length in thousandths of a wavelength
void field(benchmark::State& state, Generator g) {
  fas::mc::SimConfig sim;
  sim.track_length = static_cast<double>(state.range(0)) / 1000.0;
  sim.generator = g;
  const fas::mc::FieldGenerator gen(fas::scenario::RayleighSnr{1.0}, sim);
  fas::mc::FieldRealization f;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    gen.generate_into(trial++, f);
    benchmark::DoNotOptimize(f.channels[0].h.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(gen.grid_points()));
}

void BM_Field_Cholesky(benchmark::State& s) { field(s, Generator::Cholesky); }
void BM_Field_SumOfSinusoids(benchmark::State& s) { field(s, Generator::SumOfSinusoids); }

void BM_Setup_Cholesky(benchmark::State& state) {
  fas::mc::SimConfig sim;
  sim.track_length = static_cast<double>(state.range(0)) / 1000.0;
  for (auto _ : state) {
    const fas::mc::FieldGenerator gen(fas::scenario::RayleighSnr{1.0}, sim);
    benchmark::DoNotOptimize(gen.factor_rank());
  }
}

void BM_Metric_Sinr(benchmark::State& state) {
  fas::mc::SimConfig sim;
  const fas::Scenario sc = fas::scenario::SinrUnequal{1.0, {1.0 / 0.6, 1.0 / 0.4}};
  const auto f = fas::mc::generate_field(sc, sim, 0);
  std::vector<double> out;
  for (auto _ : state) {
    fas::mc::metric_along_track(f, sc, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_Upcrossings(benchmark::State& state) {
  fas::mc::SimConfig sim;
  const fas::Scenario sc = fas::scenario::RayleighSnr{1.0};
  const auto s = fas::mc::metric_along_track(fas::mc::generate_field(sc, sim, 0), sc);
  for (auto _ : state) benchmark::DoNotOptimize(fas::mc::count_upcrossings(s, 1.0));
}

}  // namespace

BENCHMARK(BM_Field_Cholesky)->Arg(500)->Arg(1000)->Arg(5000);
BENCHMARK(BM_Field_SumOfSinusoids)->Arg(500)->Arg(1000)->Arg(5000);
BENCHMARK(BM_Setup_Cholesky)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Metric_Sinr);
BENCHMARK(BM_Upcrossings);
