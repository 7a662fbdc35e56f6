// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "families.hpp"
#include "fas/analytic.hpp"
#include "fas/correlation.hpp"
#include "fas/error.hpp"
#include "fas/quadrature.hpp"
#include "fas/scenario.hpp"
#include "fas/specfun.hpp"
#include "oracles.hpp"

using namespace fas;
using namespace fas::analytic;
using Catch::Approx;

namespace {

const double kPi = std::numbers::pi;
const double kB = kPi * kPi;

// P(a E1 + c E2 <= s) by direct convolution
double convolution_cdf(double a, double c, double s) {
  if (s <= 0) return 0.0;
  auto f = [&](double x) { return std::exp(-x / a) / a * -std::expm1(-(s - x) / c); };
  return quadrature::integrate(f, 0.0, s, 1e-13, 1e-16).value;
}

}  // namespace

TEST_CASE("jakes correlation", "[correlation]") {
  const auto m = jakes_model();
  CHECK(m.b == Approx(kB).epsilon(1e-15));
  CHECK(m.rho(0.0) == 1.0);
  CHECK(m.rho(0.5) == Approx(oracle::j0(kPi)).margin(1e-13));
  for (double t : {1e-3, 1e-4}) CHECK(std::abs(m.rho(t) - (1.0 - m.b * t * t)) < 10.0 * std::pow(t, 4) * kB * kB);
  for (double t = 0.0; t < 5.0; t += 0.01) CHECK(m.rho(t) == m.rho(-t));
}

TEST_CASE("array coupling constants", "[correlation]") {
  const auto c = array_coupling(0.25);
  CHECK(c.delta == 0.25);
  CHECK(c.J == Approx(oracle::j0(kPi / 2)).margin(1e-13));
  CHECK(c.c1 == Approx(4.0 * kPi * oracle::j1(kPi / 2)).epsilon(1e-12));
  CHECK_THROWS_AS(array_coupling(0.0), DomainError);
}

TEST_CASE("rayleigh snr closed form", "[analytic]") {
  const auto r = rayleigh_snr({1.0}, kB, 1.0);
  CHECK(r.cdf == Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(r.lcr == Approx(std::sqrt(2.0 * kPi) * std::exp(-1.0)).epsilon(1e-14));
  const auto z = rayleigh_snr({1.0}, kB, 0.0);
  CHECK(z.cdf == 0.0);
  CHECK(z.lcr == 0.0);
  CHECK_THROWS_AS(rayleigh_snr({1.0}, kB, -1.0), DomainError);
  CHECK_THROWS_AS(rayleigh_snr({1.0}, kB, std::nan("")), DomainError);
}

TEST_CASE("sir reductions", "[analytic]") {
  const auto one = sir_unequal(InterfererSet::for_sir({1.0}), kB, 1.0);
  CHECK(one.cdf == Approx(0.5).epsilon(1e-15));
  for (double s : {0.01, 0.3, 1.0, 7.0}) {
    const auto u = sir_unequal(InterfererSet::for_sir({0.7}), kB, s);
    const auto e = sir_equal(1, 0.7, kB, s);
    CHECK(std::abs(u.cdf - e.cdf) < 1e-12);
    CHECK(std::abs(u.lcr - e.lcr) < 1e-12);
    CHECK(u.cdf == Approx(s / (s + 0.7)).epsilon(1e-14));
  }
}

TEST_CASE("equal-power paths are limits of unequal ones", "[analytic]") {
  const double eps = 1e-5;
  for (double s : {0.1, 0.5, 1.0, 3.0}) {
    const auto u = sir_unequal(InterfererSet::for_sir({0.5 * (1 + eps), 0.5 * (1 - eps)}), kB, s);
    const auto e = sir_equal(2, 0.5, kB, s);
    CHECK(std::abs(u.cdf - e.cdf) < 1e-3);
    CHECK(std::abs(u.lcr - e.lcr) < 1e-3 * std::max(1.0, e.lcr));

    const auto su = sinr_unequal({2.0}, InterfererSet::for_sinr(2.0, {0.8 * (1 + eps), 0.8 * (1 - eps)}), kB, s);
    const auto se = sinr_equal({2.0}, 2, 0.8, kB, s);
    CHECK(std::abs(su.cdf - se.cdf) < 1e-3);
    CHECK(std::abs(su.lcr - se.lcr) < 1e-3 * std::max(1.0, se.lcr));
  }
}

TEST_CASE("near-equal powers are refused by the unequal formulas", "[analytic]") {
  CHECK_THROWS_AS(sir_unequal(InterfererSet::for_sir({1.0, 1.0 + 1e-12}), kB, 1.0), DegenerateParameterError);
  CHECK_THROWS_AS(sinr_unequal({1.0}, InterfererSet::for_sinr(1.0, {0.5, 0.5}), kB, 1.0), DegenerateParameterError);
  CHECK_THROWS_AS(fixed_fluid_unequal({1.0, 1.0, 1.0, 1.0}, kB, 1.0), DegenerateParameterError);
}

TEST_CASE("sir equal prefactor at N = 2", "[analytic]") {
  CHECK(std::tgamma(2.5) / std::tgamma(2.0) == Approx(0.75 * std::sqrt(kPi)).epsilon(1e-15));
  // cdf of Lambda X / (Y1 + Y2) <= s is 1 - (Lambda / (Lambda + s))^2
  for (double s : {0.2, 1.0, 4.0}) CHECK(sir_equal(2, 0.5, kB, s).cdf == Approx(1 - std::pow(0.5 / (0.5 + s), 2)).epsilon(1e-13));
}

TEST_CASE("sinr reductions and limits", "[analytic]") {
  for (double s : {0.05, 0.5, 1.0, 4.0}) {
    const auto single = sinr_single(1.5, 0.7, kB, s);
    const auto unequal = sinr_unequal({1.5}, InterfererSet::for_sinr(1.5, {0.7}), kB, s);
    const auto equal = sinr_equal({1.5}, 1, 0.7, kB, s);
    CHECK(std::abs(single.cdf - unequal.cdf) < 1e-12);
    CHECK(std::abs(single.lcr - unequal.lcr) < 1e-12);
    CHECK(std::abs(single.cdf - equal.cdf) < 1e-12);
    CHECK(std::abs(single.lcr - equal.lcr) < 1e-12);

    const auto vanish = sinr_single(1.5, 1e-8, kB, s);
    const auto snr = rayleigh_snr({1.5}, kB, s);
    CHECK(std::abs(vanish.cdf - snr.cdf) < 1e-6);
    CHECK(std::abs(vanish.lcr - snr.lcr) < 1e-6);
  }
  const auto z = sinr_single(1.0, 1.0, kB, 0.0);
  CHECK(z.cdf == 0.0);
  CHECK(z.lcr == 0.0);
}

TEST_CASE("sinr equal bracket routes agree and stay positive", "[analytic]") {
  for (int n = 1; n <= 6; ++n) {
    for (double w : {0.1, 1.0, 10.0}) {
      const double a = sinr_equal_bracket(n, w, BinomialRoute::AlternatingSum);
      const double i = sinr_equal_bracket(n, w, BinomialRoute::Integral);
      const double au = sinr_equal_bracket(n, w);
      INFO("n = " << n << ", w = " << w);
      CHECK(std::isfinite(au));
      CHECK(au > 0.0);
      CHECK(i == Approx(a).epsilon(1e-8));
      CHECK(au == Approx(i).epsilon(1e-10));
    }
  }
}

TEST_CASE("ricean snr with K = 0 is rayleigh", "[analytic]") {
  for (double phi : {0.0, 1.3, 2 * kPi}) {
    for (double s = 0.02; s < 8.0; s *= 1.7) {
      const auto r = ricean_snr({0.0, phi, 1.3}, kB, s);
      const auto ray = rayleigh_snr({1.3}, kB, s);
      CHECK(std::abs(r.cdf - ray.cdf) < 1e-8);
      CHECK(std::abs(r.lcr - ray.lcr) < 1e-8);
    }
  }
}

TEST_CASE("ricean snr cdf is the Marcum form", "[analytic]") {
  const double K = 1.0, g0 = 1.0;
  for (double s : {0.1, 1.0, 3.0}) {
    const double ref = 1.0 - oracle::marcum_q1(std::sqrt(2 * K), std::sqrt(2 * (K + 1) * s / g0));
    CHECK(ricean_snr({K, 2 * kPi, g0}, kB, s).cdf == Approx(ref).margin(1e-12));
  }
}

TEST_CASE("ricean sir", "[analytic]") {
  RiceanSirParams p;
  p.beta0 = 1.0;
  p.beta1 = 10.0;
  p.K = 1.0;
  p.phi = 2 * kPi;
  CHECK(ricean_sir(p, kB, 0.0).cdf == 0.0);
  CHECK(ricean_sir(p, kB, 1e-9).cdf < 1e-7);
  for (double s : {0.05, 0.1, 0.5}) {
    const auto d = p.derived(kB, s);
    CHECK(ricean_sir(p, kB, s).cdf == Approx(d.f / (1 + d.f) * std::exp(-p.K / (1 + d.f))).epsilon(1e-13));
  }

  // K = 0 collapses to a single Rayleigh interferer with Lambda = beta0 / beta1
  p.K = 0.0;
  for (double s : {0.05, 0.1, 0.5, 2.0}) {
    const auto r = ricean_sir(p, kB, s);
    const auto ref = sir_unequal(InterfererSet::for_sir({0.1}), kB, s);
    CHECK(r.cdf == Approx(ref.cdf).epsilon(1e-12));
    CHECK(r.lcr == Approx(ref.lcr).epsilon(1e-7));
  }
}

TEST_CASE("fixed plus fluid marginals", "[analytic]") {
  for (double s : {0.1, 1.0, 3.0, 10.0}) {
    CHECK(fixed_fluid_unequal({1.0, 2.0, 1.0, 1.0}, kB, s).cdf == Approx(convolution_cdf(1.0, 2.0, s)).epsilon(1e-11));
    CHECK(fixed_fluid_unequal({1.0, 1e6, 1.0, 1.0}, kB, s).cdf ==
          Approx(convolution_cdf(1.0, 1e6, s)).margin(1e-12).epsilon(1e-9));
    CHECK(hypoexponential_survival(1.0, 2.0, s) == Approx(1.0 - convolution_cdf(1.0, 2.0, s)).epsilon(1e-11));
  }
  CHECK(fixed_fluid_equal({1.0, 1.0, 1.0}, kB, 1.0).cdf == Approx(1 - 2 * std::exp(-1.0)).epsilon(1e-14));
  const auto z = fixed_fluid_unequal({1.0, 2.0, 1.0, 1.0}, kB, 0.0);
  CHECK(z.cdf == 0.0);
  CHECK(z.lcr == 0.0);
}

TEST_CASE("fixed plus fluid equal is the limit of unequal", "[analytic]") {
  for (double s : {0.2, 1.0, 4.0}) {
    const auto u = fixed_fluid_unequal({1.0, 1.0 + 1e-6, 1.0, 1.0}, kB, s);
    const auto e = fixed_fluid_equal({1.0, 1.0, 1.0}, kB, s);
    CHECK(std::abs(u.cdf - e.cdf) < 1e-4);
    CHECK(std::abs(u.lcr - e.lcr) < 1e-4);
  }
}

TEST_CASE("independent array: same marginal, 3/2 the crossing rate", "[analytic]") {
  for (double s : {0.1, 0.7, 2.0, 6.0}) {
    const auto arr = array_independent({1.0, 1.0, 1.0}, kB, s);
    const auto ff = fixed_fluid_equal({1.0, 1.0, 1.0}, kB, s);
    CHECK(arr.cdf == Approx(ff.cdf).epsilon(1e-15));
    CHECK(arr.lcr / ff.lcr == Approx(1.5).epsilon(1e-13));
  }
}

TEST_CASE("correlated array marginal", "[analytic]") {
  ArrayCorrParams p{array_coupling(0.25), 1.0, 1.0, 1.0};
  const double J = p.coupling.J;
  for (double s : {0.1, 1.0, 4.0}) CHECK(array_correlated(p, kB, s).cdf == Approx(convolution_cdf(1 + J, 1 - J, s)).epsilon(1e-10));
  const auto z = array_correlated(p, kB, 0.0);
  CHECK(z.cdf == 0.0);
  CHECK(z.lcr == 0.0);
  CHECK_THROWS_AS(array_correlated({array_coupling(0.0), 1.0, 1.0, 1.0}, kB, 1.0), DomainError);
}

TEST_CASE("correlated array crossing rate near J = 0", "[analytic]") {
  // first zero of J0 puts J at the small-J branch
  const double zero = 2.404825557695773 / (2 * kPi);
  ArrayCorrParams p{array_coupling(zero), 1.0, 1.0, 1.0};
  REQUIRE(std::abs(p.coupling.J) < 1e-4);
  for (double s : {0.3, 1.0, 3.0}) {
    const double v = array_correlated(p, kB, s).lcr;
    CHECK(std::isfinite(v));
    CHECK(v == Approx(array_correlated_lcr_integral(p, kB, s)).epsilon(1e-8));
  }

  // |J| = 1e-3: Dawson form, integral form and the evaluator agree
  double lo = zero - 0.01, hi = zero;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::j0(2 * kPi * mid) > 1e-3 ? lo : hi) = mid;
  }
  ArrayCorrParams q{array_coupling(lo), 1.0, 1.0, 1.0};
  REQUIRE(q.coupling.J == Approx(1e-3).epsilon(1e-6));
  for (double s : {0.3, 1.0, 3.0}) {
    const double v = array_correlated(q, kB, s).lcr;
    CHECK(v == Approx(array_correlated_lcr_dawson(q, kB, s)).epsilon(1e-6));
    CHECK(v == Approx(array_correlated_lcr_integral(q, kB, s)).epsilon(1e-8));
  }

  // continuity across the branch switch
  auto at_j = [&](double target) {
    double a = zero - 0.01, c = zero;
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (a + c);
      (oracle::j0(2 * kPi * mid) > target ? a : c) = mid;
    }
    return ArrayCorrParams{array_coupling(a), 1.0, 1.0, 1.0};
  };
  const auto below = at_j(0.99e-4), above = at_j(1.01e-4);
  CHECK(array_correlated(below, kB, 1.0).lcr == Approx(array_correlated(above, kB, 1.0).lcr).epsilon(1e-5));
}

TEST_CASE("sqrt_exp_moment", "[analytic]") {
  for (double z : {-30.0, -1.0, 0.0, 0.5, 4.0}) {
    const double ref =
        quadrature::integrate([&](double v) { return std::sqrt(v) * std::exp(z * v); }, 0.0, 1.0, 1e-13, 1e-16).value;
    CHECK(sqrt_exp_moment(z) == Approx(ref).epsilon(1e-10));
  }
  CHECK(sqrt_exp_moment(0.0) == Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("every family obeys the cdf and crossing-rate contract", "[analytic][property]") {
  std::mt19937_64 rng(2024);
  std::vector<double> grid(200);
  for (int i = 0; i < 200; ++i) grid[i] = std::pow(10.0, -4.0 + 8.0 * i / 199.0);
  int checked = 0;
  for (int kind = 0; kind < family::kKinds; ++kind) {
    for (int draw = 0; draw < 10; ++draw) {
      const Scenario sc = family::draw(rng, kind);
      INFO(scenario_to_json(sc));
      const auto zero = evaluate(sc, kB, 0.0);
      REQUIRE(zero.cdf == 0.0);
      REQUIRE(zero.lcr == 0.0);
      double prev = 0.0, peak = 0.0;
      for (double s : grid) {
        const auto v = evaluate(sc, kB, s);
        REQUIRE(v.cdf >= prev - 1e-12);
        REQUIRE(v.cdf <= 1.0 + 1e-12);
        REQUIRE(v.lcr >= 0.0);
        REQUIRE(std::isfinite(v.lcr));
        prev = v.cdf;
        peak = std::max(peak, v.lcr);
      }
      const auto top = evaluate(sc, kB, grid.back());
      REQUIRE(top.cdf > 0.99);
      // ricean sir decays only like s^-1/2, so compare against a decade-scale point
      REQUIRE(top.lcr <= evaluate(sc, kB, 1e2).lcr);
      REQUIRE(top.lcr < peak);
      ++checked;
    }
  }
  CHECK(checked == 10 * family::kKinds);
}
