// SPDX-License-Identifier: Apache-2.0
#include "fas/supremum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fas/error.hpp"
#include "fas/specfun.hpp"

namespace fas {
namespace {

void check_triple(double cdf, double lcr, double L) {
  if (!(cdf >= 0.0 && cdf <= 1.0)) throw DomainError("sup_cdf: cdf must lie in [0, 1]");
  if (!(lcr >= 0.0) || !std::isfinite(lcr)) throw DomainError("sup_cdf: lcr must be finite and >= 0");
  if (!(L >= 0.0) || !std::isfinite(L)) throw DomainError("sup_cdf: L must be finite and >= 0");
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

SupremumResult sup_cdf(double cdf, double lcr, double L, double s_th) {
  check_triple(cdf, lcr, L);
  SupremumResult r;
  r.s_th = s_th;
  r.marginal_cdf = cdf;
  r.lcr = lcr;
  r.L = L;
  if (cdf == 0.0) {
    return r;
  }
  r.approx_cdf = L == 0.0 ? cdf : cdf * std::exp(-L * lcr / cdf);
  r.lower_bound = std::max(0.0, cdf - L * lcr);
  return r;
}

double sup_cdf_bound(double cdf, double lcr, double L) {
  check_triple(cdf, lcr, L);
  return std::max(0.0, cdf - L * lcr);
}

double tail_success_snr(double gamma0, double b, double L, double s_th) {
  check_positive(gamma0, "tail_success_snr: gamma0");
  if (!(s_th >= 0.0) || !(L >= 0.0)) throw DomainError("tail_success_snr: s_th and L must be >= 0");
  const double u = s_th / gamma0;
  return std::exp(-u) * (1.0 + L * std::sqrt(2.0 * b * u / std::numbers::pi));
}

double tail_success_sinr(double gamma0, double gamma1, double b, double L, double s_th) {
  check_positive(gamma0, "tail_success_sinr: gamma0");
  check_positive(gamma1, "tail_success_sinr: gamma1");
  if (!(s_th >= 0.0) || !(L >= 0.0)) throw DomainError("tail_success_sinr: s_th and L must be >= 0");
  const double lambda = gamma0 / gamma1;
  const double scale = std::sqrt(2.0 * b * s_th * gamma1 / (std::numbers::pi * gamma0)) *
                       specfun::gamma_upper_scaled(1.5, 1.0 / gamma1);
  return lambda / (lambda + s_th) * std::exp(-s_th / gamma0) * (1.0 + L * scale);
}

double neutralization_length(double s_th, double gamma0, double gamma1, double b) {
  check_positive(s_th, "neutralization_length: s_th");
  check_positive(gamma0, "neutralization_length: gamma0");
  check_positive(gamma1, "neutralization_length: gamma1");
  check_positive(b, "neutralization_length: b");
  // e^{-1/g1} / Gamma(3/2, 1/g1) = 1 / (e^{1/g1} Gamma(3/2, 1/g1))
  return std::sqrt(std::numbers::pi * s_th * gamma1 / (2.0 * b * gamma0)) /
         specfun::gamma_upper_scaled(1.5, 1.0 / gamma1);
}

double required_length(double target_pT, double cdf, double lcr) {
  if (!(target_pT > 0.0 && target_pT < 1.0)) throw DomainError("required_length: p_T must lie in (0, 1)");
  check_triple(cdf, lcr, 0.0);
  if (target_pT > cdf) {
    throw InfeasibleTargetError("required_length: target already met without movement (p_T > marginal cdf)");
  }
  if (target_pT == cdf) return 0.0;
  if (lcr == 0.0) {
    throw InfeasibleTargetError("required_length: zero crossing rate, movement cannot lower the outage");
  }
  return -(cdf / lcr) * std::log(target_pT / cdf);
}

}  // namespace fas
