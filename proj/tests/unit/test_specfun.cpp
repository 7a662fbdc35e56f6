// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fas/error.hpp"
#include "fas/quadrature.hpp"
#include "fas/specfun.hpp"
#include "oracles.hpp"

using namespace fas;
using Catch::Approx;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double quad(const quadrature::Integrand& f, double a, double b) {
  return quadrature::integrate(f, a, b, 1e-14, 1e-16).value;
}

}  // namespace

TEST_CASE("bessel J0 values", "[specfun]") {
  CHECK(specfun::bessel_j0(0.0) == 1.0);
  CHECK(std::abs(specfun::bessel_j0(std::numbers::pi) - oracle::bessel_series(0, std::numbers::pi)) < 1e-14);

  // first zero located by bisection on the series oracle
  double lo = 2.3, hi = 2.5;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::bessel_series(0, mid) > 0 ? lo : hi) = mid;
  }
  CHECK(std::abs(specfun::bessel_j0(lo)) < 1e-10);
  CHECK(lo == Approx(2.404826).margin(1e-6));
}

TEST_CASE("bessel J0/J1 against oracles on |x| <= 50", "[specfun]") {
  for (double x = -50.0; x <= 50.0; x += 0.173) {
    INFO("x = " << x);
    CHECK(std::abs(specfun::bessel_j0(x) - oracle::j0(x)) < 1e-12);
    CHECK(std::abs(specfun::bessel_j1(x) - oracle::j1(x)) < 1e-12);
    CHECK(std::abs(specfun::bessel_j0(x)) <= 1.0);
  }
  for (double x : {0.1, 1.0, 5.0, 20.0}) {
    CHECK(std::abs(specfun::bessel_j1(x) - oracle::bessel_series(1, x)) < 1e-12);
  }
}

TEST_CASE("bessel J1 is odd and J0' = -J1", "[specfun]") {
  CHECK(specfun::bessel_j1(0.0) == 0.0);
  double worst = 0.0;
  const double h = 1e-5;
  for (double x = 0.05; x < 40.0; x += 0.31) {
    CHECK(specfun::bessel_j1(-x) == -specfun::bessel_j1(x));
    const double d = (specfun::bessel_j0(x + h) - specfun::bessel_j0(x - h)) / (2 * h);
    worst = std::max(worst, std::abs(d + specfun::bessel_j1(x)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("bessel branches agree at the seams", "[specfun]") {
  for (double seam : {specfun::seam::bessel_series_max, specfun::seam::bessel_asymptotic_min}) {
    const double below = std::nextafter(seam, 0.0), above = std::nextafter(seam, kInf);
    CHECK(std::abs(specfun::bessel_j0(below) - specfun::bessel_j0(above)) < 1e-11);
    CHECK(std::abs(specfun::bessel_j1(below) - specfun::bessel_j1(above)) < 1e-11);
  }
}

TEST_CASE("erf values and symmetry", "[specfun]") {
  CHECK(specfun::erf(0.0) == 0.0);
  CHECK(std::abs(specfun::erf(10.0) - 1.0) < 1e-15);
  const double one = 2.0 / std::sqrt(std::numbers::pi) * quad([](double t) { return std::exp(-t * t); }, 0.0, 1.0);
  CHECK(std::abs(specfun::erf(1.0) - one) < 1e-12);
  double prev = -1.0;
  for (double x = -6.0; x <= 6.0; x += 0.01) {
    CHECK(specfun::erf(-x) == -specfun::erf(x));
    CHECK(specfun::erf(x) >= prev);
    prev = specfun::erf(x);
    CHECK(std::abs(specfun::erf(x) - oracle::erf(x)) < 1e-14);
  }
  const double s = specfun::seam::erf_series_max;
  CHECK(std::abs(specfun::erf(std::nextafter(s, 0.0)) - specfun::erf(std::nextafter(s, kInf))) < 1e-11);
}

TEST_CASE("erfc and erfcx", "[specfun]") {
  for (double x = -5.0; x <= 25.0; x += 0.137) {
    INFO("x = " << x);
    const double ref = oracle::erfc(x);
    CHECK(std::abs(specfun::erfc(x) - ref) <= 1e-13 * ref + 1e-300);
    const double refx = static_cast<double>(exp(oracle::hp(x) * x) * boost::math::erfc(oracle::hp(x)));
    CHECK(specfun::erfcx(x) == Approx(refx).epsilon(1e-12));
  }
}

TEST_CASE("incomplete gamma identities", "[specfun]") {
  for (double a : {0.5, 1.5, 2.0, 3.7, 10.0}) CHECK(specfun::gamma_upper(a, 0.0) == Approx(std::tgamma(a)).epsilon(1e-14));
  for (double x : {0.0, 0.3, 1.0, 7.0, 40.0}) {
    CHECK(specfun::gamma_upper(1.0, x) == Approx(std::exp(-x)).epsilon(1e-14));
    CHECK(specfun::gamma_lower(2.0, x) == Approx(1.0 - std::exp(-x) * (1.0 + x)).margin(1e-15).epsilon(1e-13));
  }
  CHECK(specfun::gamma_lower(2.5, 0.0) == 0.0);

  const double up = quad([](double t) { return std::sqrt(t) * std::exp(-t); }, 1.0, 60.0);
  CHECK(std::abs(specfun::gamma_upper(1.5, 1.0) - up) < 1e-12);
  const double low = quad([](double t) { return std::sqrt(t) * std::exp(-t); }, 0.0, 2.5);
  CHECK(std::abs(specfun::gamma_lower(1.5, 2.5) - low) < 1e-12);
}

TEST_CASE("incomplete gamma complement and monotonicity", "[specfun]") {
  for (double a = 0.5; a <= 10.0; a += 0.25) {
    double prev = kInf;
    for (double x = 0.0; x <= 50.0; x += 0.37) {
      const double u = specfun::gamma_upper(a, x), l = specfun::gamma_lower(a, x);
      CHECK((u + l) == Approx(std::tgamma(a)).epsilon(1e-12));
      CHECK(u <= prev);
      CHECK(u > 0.0);
      prev = u;
      CHECK(specfun::gamma_upper_scaled(a, x) == Approx(std::exp(x) * u).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(specfun::gamma_upper(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(specfun::gamma_lower(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(specfun::gamma_upper(1.0, -1.0), DomainError);
}

TEST_CASE("marcum Q1 special values and oracle", "[specfun]") {
  for (double a : {0.0, 0.5, 3.0}) CHECK(specfun::marcum_q1(a, 0.0) == 1.0);
  for (double b : {0.1, 1.0, 4.0}) CHECK(specfun::marcum_q1(0.0, b) == Approx(std::exp(-b * b / 2)).epsilon(1e-14));
  CHECK(std::abs(specfun::marcum_q1(std::sqrt(2.0), 1.0) - oracle::marcum_q1(std::sqrt(2.0), 1.0)) < 1e-14);
  for (double a : {0.3, 2.0, 6.0, 12.0}) {
    for (double b : {0.2, 1.5, 5.0, 9.0, 15.0}) {
      const double q = specfun::marcum_q1(a, b);
      CHECK(std::abs(q - oracle::marcum_q1(a, b)) < 1e-12);
      CHECK(std::abs(specfun::marcum_q1_complement(a, b) - (1.0 - oracle::marcum_q1(a, b))) < 1e-12);
    }
  }
  CHECK_THROWS_AS(specfun::marcum_q1(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(specfun::marcum_q1(1.0, -1.0), DomainError);
}

TEST_CASE("marcum Q1 monotone on a 100x100 grid", "[specfun]") {
  int violations = 0;
  std::vector<double> prev_row(100, 0.0);
  for (int i = 0; i < 100; ++i) {
    const double a = 0.1 * i;
    double prev = 2.0;
    for (int j = 0; j < 100; ++j) {
      const double q = specfun::marcum_q1(a, 0.12 * j);
      if (q > prev + 1e-15 || q < 0.0 || q > 1.0) ++violations;  // decreasing in b
      if (i > 0 && q < prev_row[j] - 1e-15) ++violations;        // increasing in a
      prev = q;
      prev_row[j] = q;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("dawson values, symmetry and asymptote", "[specfun]") {
  CHECK(specfun::dawson(0.0) == 0.0);
  const double x = 1e-3;
  CHECK(std::abs(specfun::dawson(x) - (x - 2.0 / 3.0 * x * x * x)) < 1e-12);
  const double one = std::exp(-1.0) * quad([](double t) { return std::exp(t * t); }, 0.0, 1.0);
  CHECK(std::abs(specfun::dawson(1.0) - one) < 1e-12);
  double peak = 0.0;
  for (double t = -12.0; t <= 12.0; t += 0.01) {
    CHECK(specfun::dawson(-t) == -specfun::dawson(t));
    peak = std::max(peak, std::abs(specfun::dawson(t)));
  }
  CHECK(peak <= 0.5411);
  CHECK(specfun::dawson(1e4) * 2e4 == Approx(1.0).epsilon(1e-8));
  const double s = specfun::seam::dawson_series_max;
  CHECK(std::abs(specfun::dawson(std::nextafter(s, 0.0)) - specfun::dawson(std::nextafter(s, kInf))) < 1e-11);
}

TEST_CASE("random inputs agree with oracles within 1e-10", "[specfun][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = 100.0 * u(rng) - 50.0;
    REQUIRE(std::abs(specfun::bessel_j0(x) - oracle::j0(x)) < 1e-10);
    REQUIRE(std::abs(specfun::bessel_j1(x) - oracle::j1(x)) < 1e-10);
    const double d = 30.0 * u(rng) - 15.0;
    REQUIRE(std::abs(specfun::dawson(d) - oracle::dawson(d)) < 1e-10);
    const double a = 0.5 + 9.5 * u(rng), z = 50.0 * u(rng);
    REQUIRE(std::abs(specfun::gamma_lower(a, z) - oracle::gamma_lower(a, z)) < 1e-10 * std::max(1.0, std::tgamma(a)));
  }
}

TEST_CASE("error estimates stay below 1e-10", "[specfun]") {
  for (double x = 0.0; x < 50.0; x += 0.5) {
    CHECK(specfun::bessel_j0_eval(x).est_abs_error <= 1e-10);
    CHECK(specfun::bessel_j1_eval(x).est_abs_error <= 1e-10);
    CHECK(specfun::erf_eval(x / 5).est_abs_error <= 1e-10);
    CHECK(specfun::dawson_eval(x / 3).est_abs_error <= 1e-10);
  }
  for (double a : {0.5, 1.5, 2.5}) {
    for (double x : {0.01, 1.0, 10.0}) {
      CHECK(specfun::gamma_upper_eval(a, x).est_abs_error <= 1e-10);
      CHECK(specfun::gamma_lower_eval(a, x).est_abs_error <= 1e-10);
    }
  }
  CHECK(specfun::marcum_q1_eval(1.0, 2.0).est_abs_error <= 1e-10);
}

TEST_CASE("non-finite input is a domain error", "[specfun]") {
  CHECK_THROWS_AS(specfun::bessel_j0(kNaN), DomainError);
  CHECK_THROWS_AS(specfun::bessel_j1(kInf), DomainError);
  CHECK_THROWS_AS(specfun::erf(kNaN), DomainError);
  CHECK_THROWS_AS(specfun::dawson(kNaN), DomainError);
}
