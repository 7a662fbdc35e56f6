// SPDX-License-Identifier: Apache-2.0
//
// Real-argument special functions used by the closed-form cdf and LCR
// expressions. Every routine picks a power series for small arguments and an
// asymptotic expansion or continued fraction for large ones; the switch
// points are the constants in `seam` below.
#pragma once

namespace fas::specfun {

struct SpecFunResult {
  double value = 0.0;
  double est_abs_error = 0.0;
};

namespace seam {
inline constexpr double bessel_series_max = 8.0;     // |x| <= 8: power series
inline constexpr double bessel_asymptotic_min = 30.0;  // |x| > 30: Hankel expansion, else Miller recurrence
inline constexpr double erf_series_max = 3.0;         // |x| < 3: series, else erfc continued fraction
inline constexpr double dawson_series_max = 6.5;      // |x| < 6.5: erfi series, else asymptotic
}  // namespace seam

SpecFunResult bessel_j0_eval(double x);
SpecFunResult bessel_j1_eval(double x);
double bessel_j0(double x);
double bessel_j1(double x);

SpecFunResult erf_eval(double x);
double erf(double x);
double erfc(double x);
// exp(x^2) * erfc(x), finite for all real x below ~26.
double erfcx(double x);

// Upper incomplete gamma Gamma(a, x) (not normalized).
SpecFunResult gamma_upper_eval(double a, double x);
double gamma_upper(double a, double x);
// exp(x) * Gamma(a, x); stays finite for large x.
double gamma_upper_scaled(double a, double x);
// Lower incomplete gamma gamma(a, x) (not normalized; gamma(2, x) = 1 - e^{-x}(1 + x)).
SpecFunResult gamma_lower_eval(double a, double x);
double gamma_lower(double a, double x);

// First-order Marcum Q-function Q1(a, b).
SpecFunResult marcum_q1_eval(double a, double b);
double marcum_q1(double a, double b);
// 1 - Q1(a, b), accurate when Q1 is close to one.
double marcum_q1_complement(double a, double b);

// Dawson integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
SpecFunResult dawson_eval(double x);
double dawson(double x);

}  // namespace fas::specfun
