// SPDX-License-Identifier: Apache-2.0
//
// Distribution of S* = sup_{0<=l<=L} S(l) from the marginal cdf F and the
// crossing rate LCR at a threshold: F exp(-L LCR / F), with the first-order
// lower bound max(0, F - L LCR).
#pragma once

namespace fas {

struct SupremumResult {
  double s_th = 0.0;
  double approx_cdf = 0.0;
  double lower_bound = 0.0;
  double marginal_cdf = 0.0;
  double lcr = 0.0;
  double L = 0.0;
};

// Requires cdf in [0, 1], lcr >= 0, L >= 0; otherwise DomainError.
SupremumResult sup_cdf(double cdf, double lcr, double L, double s_th = 0.0);
double sup_cdf_bound(double cdf, double lcr, double L);

// High-threshold success probability P(S* > s_th) for Rayleigh SNR.
double tail_success_snr(double gamma0, double b, double L, double s_th);
// Same for SINR with one Rayleigh interferer of mean INR gamma1.
double tail_success_sinr(double gamma0, double gamma1, double b, double L, double s_th);

// Track length at which the single-interferer SINR tail matches the
// interference-free fixed-antenna SNR tail.
double neutralization_length(double s_th, double gamma0, double gamma1, double b);

// L solving F exp(-L LCR / F) = p_T. Returns 0 when p_T == F; throws
// InfeasibleTargetError when p_T > F or when LCR == 0 with p_T < F.
double required_length(double target_pT, double cdf, double lcr);

}  // namespace fas
