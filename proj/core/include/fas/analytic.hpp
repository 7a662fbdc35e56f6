// SPDX-License-Identifier: Apache-2.0
//
// Marginal cdf and spatial level crossing rate (upcrossings per wavelength)
// of the metric S(l) for each supported receiver layout. Every function
// returns {0, 0} at s_th = 0 and throws DomainError for negative or
// non-finite thresholds.
#pragma once

#include <vector>

#include "fas/correlation.hpp"

namespace fas::analytic {

struct CdfLcr {
  double cdf = 0.0;
  double lcr = 0.0;
};

// ---- Rayleigh ------------------------------------------------------------

struct RayleighSnrParams {
  double gamma0 = 1.0;  // mean SNR
};

// Interferer description. For SIR only `lambdas` is used
// (Lambda_n = desired power / interferer n power); for SINR `gammas` holds the
// per-interferer mean INR and lambdas are gamma0 / gamma_n.
struct InterfererSet {
  std::vector<double> lambdas;
  std::vector<double> gammas;
  bool equal_power = false;

  static InterfererSet for_sir(std::vector<double> lambdas);
  static InterfererSet for_sinr(double gamma0, std::vector<double> gammas);
};

// Relative pairwise gap below which the partial-fraction expansion is refused.
inline constexpr double kDegeneracyGap = 1e-9;

CdfLcr rayleigh_snr(const RayleighSnrParams& p, double b, double s_th);
CdfLcr sir_unequal(const InterfererSet& ints, double b, double s_th);
CdfLcr sir_equal(int n, double lambda, double b, double s_th);
CdfLcr sinr_single(double gamma0, double gamma1, double b, double s_th);
CdfLcr sinr_unequal(const RayleighSnrParams& p, const InterfererSet& ints, double b, double s_th);
// N interferers with common mean INR gamma; Lambda = gamma0 / gamma.
CdfLcr sinr_equal(const RayleighSnrParams& p, int n, double gamma, double b, double s_th);

// e^W * sum_j (-W)^{N-1-j} C(N-1, j) Gamma(j + 3/2, W), the bracket of the
// equal-power SINR crossing rate. `Auto` evaluates the alternating sum and
// switches to the integral form when cancellation exceeds 1e6.
enum class BinomialRoute { Auto, AlternatingSum, Integral };
double sinr_equal_bracket(int n, double w, BinomialRoute route = BinomialRoute::Auto);

// ---- Ricean desired link -------------------------------------------------

struct RiceanParams {
  double K = 0.0;
  double phi = 0.0;  // LoS phase slope, rad / wavelength
  double gamma0 = 1.0;

  double zeta() const;           // sqrt(K / (K + 1))
  double bcap(double b) const;   // b / (K + 1)
};

struct RiceanSirParams {
  double beta0 = 1.0;
  double beta1 = 1.0;
  double ex0 = 1.0;
  double ex1 = 1.0;
  double K = 0.0;
  double phi = 0.0;

  struct Derived {
    double f;
    double alpha;
    double kappa1;
    double kappa2;
    double kappa3;
  };
  Derived derived(double b, double s_th) const;
};

// Crossing-rate value with the diagnostics of its theta quadrature.
struct LcrEval {
  double value = 0.0;
  double est_error = 0.0;
  long evaluations = 0;
};

inline constexpr double kRiceanRelTol = 1e-9;

CdfLcr ricean_snr(const RiceanParams& p, double b, double s_th);
CdfLcr ricean_sir(const RiceanSirParams& p, double b, double s_th);
LcrEval ricean_snr_lcr(const RiceanParams& p, double b, double s_th, double rel_tol);
LcrEval ricean_sir_lcr(const RiceanSirParams& p, double b, double s_th, double rel_tol);

// ---- multi-antenna MRC ---------------------------------------------------

struct FixedFluidParams {
  double beta0 = 1.0;  // fluid branch
  double betaf = 1.0;  // fixed branch
  double ex0 = 1.0;
  double sigma2 = 1.0;

  double varsigma() const;  // 1/beta0 - 1/betaf
};

struct MrcEqualParams {
  double beta = 1.0;
  double ex0 = 1.0;
  double sigma2 = 1.0;
};

struct ArrayCorrParams {
  ArrayCoupling coupling;
  double beta = 1.0;
  double ex0 = 1.0;
  double sigma2 = 1.0;

  double c0() const;  // ex0 * beta / sigma2
  // Arguments of the Dawson-form expression at a threshold.
  double x1(double b, double s_th) const;
  double x2(double b, double s_th) const;
};

CdfLcr fixed_fluid_unequal(const FixedFluidParams& p, double b, double s_th);
CdfLcr fixed_fluid_equal(const MrcEqualParams& p, double b, double s_th);
CdfLcr array_independent(const MrcEqualParams& p, double b, double s_th);
CdfLcr array_correlated(const ArrayCorrParams& p, double b, double s_th);

// Literal Dawson-integral form of the correlated-array crossing rate. Only
// defined for J > 0; loses accuracy as J -> 0. Kept for cross-checks.
double array_correlated_lcr_dawson(const ArrayCorrParams& p, double b, double s_th);
// Same rate as a regular integral over the element-mixing variable.
double array_correlated_lcr_integral(const ArrayCorrParams& p, double b, double s_th);

// H(z) = int_0^1 sqrt(v) e^{z v} dv, scaled by e^{shift} to keep large
// arguments in range.
double sqrt_exp_moment(double z, double shift = 0.0);

// Survival function of lambda1 E1 + lambda2 E2 for unit exponentials E1, E2.
double hypoexponential_survival(double lambda1, double lambda2, double x);

}  // namespace fas::analytic
