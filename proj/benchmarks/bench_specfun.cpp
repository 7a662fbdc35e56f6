// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <vector>

#include "fas/specfun.hpp"

namespace {

std::vector<double> points(double lo, double hi, int n = 256) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * (i + 0.5) / n;
  return v;
}

template <class F>
void sweep(benchmark::State& state, const std::vector<double>& xs, F f) {
  for (auto _ : state) {
    for (double x : xs) benchmark::DoNotOptimize(f(x));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_BesselJ0_Series(benchmark::State& s) { sweep(s, points(0.0, 8.0), fas::specfun::bessel_j0); }
void BM_BesselJ0_Recurrence(benchmark::State& s) { sweep(s, points(8.0, 30.0), fas::specfun::bessel_j0); }
void BM_BesselJ0_Asymptotic(benchmark::State& s) { sweep(s, points(30.0, 200.0), fas::specfun::bessel_j0); }
void BM_Erf(benchmark::State& s) { sweep(s, points(-6.0, 6.0), fas::specfun::erf); }
void BM_Dawson(benchmark::State& s) { sweep(s, points(0.0, 12.0), fas::specfun::dawson); }
void BM_GammaUpper(benchmark::State& s) {
  sweep(s, points(0.0, 20.0), [](double x) { return fas::specfun::gamma_upper(2.5, x); });
}
void BM_MarcumQ1(benchmark::State& s) {
  sweep(s, points(0.0, 6.0, 64), [](double b) { return fas::specfun::marcum_q1(1.4, b); });
}

}  // namespace

BENCHMARK(BM_BesselJ0_Series);
BENCHMARK(BM_BesselJ0_Recurrence);
BENCHMARK(BM_BesselJ0_Asymptotic);
BENCHMARK(BM_Erf);
BENCHMARK(BM_Dawson);
BENCHMARK(BM_GammaUpper);
BENCHMARK(BM_MarcumQ1);
