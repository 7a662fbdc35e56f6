// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fas/scenario.hpp"
#include "fas/supremum.hpp"

namespace {

const double kB = std::numbers::pi * std::numbers::pi;

// one 200-point log grid per figure curve
std::vector<double> grid() {
  std::vector<double> v(200);
  for (int i = 0; i < 200; ++i) v[i] = std::pow(10.0, -2.0 + 4.0 * i / 199.0);
  return v;
}

void curve(benchmark::State& state, const fas::Scenario& sc) {
  const auto g = grid();
  for (auto _ : state) {
    for (double s : g) {
      const auto v = fas::evaluate(sc, kB, s);
      benchmark::DoNotOptimize(fas::sup_cdf(v.cdf, v.lcr, 1.0, s));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}

void BM_Curve_RayleighSnr(benchmark::State& s) { curve(s, fas::scenario::RayleighSnr{1.0}); }
void BM_Curve_SinrUnequal(benchmark::State& s) { curve(s, fas::scenario::SinrUnequal{1.0, {1.0 / 0.6, 1.0 / 0.4}}); }
void BM_Curve_SinrEqual6(benchmark::State& s) { curve(s, fas::scenario::SinrEqual{1.0, 6, 0.5}); }
void BM_Curve_RiceanSnr(benchmark::State& s) {
  curve(s, fas::scenario::RiceanSnr{{1.0, 2 * std::numbers::pi, 1.0}});
}
void BM_Curve_RiceanSir(benchmark::State& s) {
  fas::analytic::RiceanSirParams p;
  p.beta1 = 10.0;
  p.K = 1.0;
  p.phi = 2 * std::numbers::pi;
  curve(s, fas::scenario::RiceanSir{p});
}
void BM_Curve_ArrayCorrelated(benchmark::State& s) { curve(s, fas::scenario::ArrayCorrelated{0.25, {1.0, 1.0, 1.0}}); }

}  // namespace

BENCHMARK(BM_Curve_RayleighSnr);
BENCHMARK(BM_Curve_SinrUnequal);
BENCHMARK(BM_Curve_SinrEqual6);
BENCHMARK(BM_Curve_RiceanSnr)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Curve_RiceanSir)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Curve_ArrayCorrelated);
