// SPDX-License-Identifier: Apache-2.0
#include "fas/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fas/error.hpp"
#include "fas/quadrature.hpp"
#include "fas/specfun.hpp"

namespace fas::analytic {
namespace {

constexpr double kPi = std::numbers::pi;

// Returns true for s_th == 0, where every pair is (0, 0).
bool zero_threshold(double s_th, const char* fn) {
  if (!std::isfinite(s_th) || s_th < 0.0) {
    throw DomainError(std::string(fn) + ": threshold must be finite and non-negative");
  }
  return s_th == 0.0;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

double min_relative_gap(const std::vector<double>& v) {
  double gap = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      gap = std::min(gap, std::abs(v[i] - v[j]) / std::max(v[i], v[j]));
    }
  }
  return gap;
}

// log prod_n Lambda_n / (Lambda_n + s)
double log_interference_product(const std::vector<double>& lambdas, double s) {
  double acc = 0.0;
  for (double l : lambdas) acc -= std::log1p(s / l);
  return acc;
}

// prod_{i != n} w_i / (w_i - w_n)
double partial_fraction_weight(const std::vector<double>& w, std::size_t n) {
  double d = 1.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != n) d *= w[i] / (w[i] - w[n]);
  }
  return d;
}

// F(x) for lambda1 E1 + lambda2 E2; alternating power series near the origin
// where 1 - survival would cancel.
double hypoexponential_cdf(double l1, double l2, double x) {
  if (x <= 0.0) return 0.0;
  const double lmin = std::min(l1, l2);
  if (x < lmin) {
    const double r1 = 1.0 / l1;
    const double r2 = 1.0 / l2;
    double h = 1.0;       // complete homogeneous polynomial h_{n-2}(r1, r2)
    double r1pow = 1.0;   // r1^{n-2}
    double xn = x * x / 2.0;  // x^n / n!
    double sum = 0.0;
    for (int n = 2; n < 200; ++n) {
      const double term = (n % 2 == 0 ? 1.0 : -1.0) * xn * r1 * r2 * h;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      xn *= x / (n + 1);
      r1pow *= r1;
      h = r2 * h + r1pow;
    }
    return sum;
  }
  return 1.0 - hypoexponential_survival(l1, l2, x);
}

// e^{shift} int_{y1}^{y2} sqrt(t) e^{k t} dt for 0 <= y1 <= y2.
double sqrt_exp_segment(double k, double y1, double y2, double shift) {
  if (k < 0.0 && -k * y1 >= 1.0) {
    // Both ends deep in the decaying regime: difference of upper gammas.
    const double q = -k;
    const double lo = std::exp(shift + k * y1) * specfun::gamma_upper_scaled(1.5, q * y1);
    const double hi = std::exp(shift + k * y2) * specfun::gamma_upper_scaled(1.5, q * y2);
    return (lo - hi) / (q * std::sqrt(q));
  }
  return std::pow(y2, 1.5) * sqrt_exp_moment(k * y2, shift) - std::pow(y1, 1.5) * sqrt_exp_moment(k * y1, shift);
}

}  // namespace

// ---------------------------------------------------------------------------

double sqrt_exp_moment(double z, double shift) {
  if (std::abs(z) <= 1.0) {
    // 2 sum z^n / (n! (2n + 3))
    double c = 1.0;
    double sum = 2.0 / 3.0;
    for (int n = 1; n < 60; ++n) {
      c *= z / n;
      const double t = 2.0 * c / (2.0 * n + 3.0);
      sum += t;
      if (std::abs(t) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(shift) * sum;
  }
  if (z > 1.0) {
    const double r = std::sqrt(z);
    return std::exp(shift + z) * (r - specfun::dawson(r)) / (z * r);
  }
  const double q = -z;
  return std::exp(shift) * specfun::gamma_lower(1.5, q) / (q * std::sqrt(q));
}

double hypoexponential_survival(double l1, double l2, double x) {
  if (x <= 0.0) return 1.0;
  const double lmax = std::max(l1, l2);
  const double lmin = std::min(l1, l2);
  const double d = x * (lmax - lmin) / (lmax * lmin);
  if (d < 1.0) {
    const double ratio = d == 0.0 ? 1.0 : std::expm1(d) / d;
    return std::exp(-x / lmin) * (1.0 + x / lmin * ratio);
  }
  return (lmax * std::exp(-x / lmax) - lmin * std::exp(-x / lmin)) / (lmax - lmin);
}

InterfererSet InterfererSet::for_sir(std::vector<double> lambdas) {
  if (lambdas.empty()) throw DomainError("InterfererSet: at least one interferer required");
  for (double l : lambdas) require_positive(l, "InterfererSet: Lambda");
  InterfererSet s;
  s.equal_power = min_relative_gap(lambdas) < kDegeneracyGap;
  s.lambdas = std::move(lambdas);
  return s;
}

InterfererSet InterfererSet::for_sinr(double gamma0, std::vector<double> gammas) {
  require_positive(gamma0, "InterfererSet: gamma0");
  if (gammas.empty()) throw DomainError("InterfererSet: at least one interferer required");
  InterfererSet s;
  for (double g : gammas) {
    require_positive(g, "InterfererSet: gamma");
    s.lambdas.push_back(gamma0 / g);
  }
  s.equal_power = min_relative_gap(gammas) < kDegeneracyGap;
  s.gammas = std::move(gammas);
  return s;
}

CdfLcr rayleigh_snr(const RayleighSnrParams& p, double b, double s_th) {
  require_positive(p.gamma0, "rayleigh_snr: gamma0");
  if (zero_threshold(s_th, "rayleigh_snr")) return {};
  const double u = s_th / p.gamma0;
  return {-std::expm1(-u), std::sqrt(2.0 * b * u / kPi) * std::exp(-u)};
}

CdfLcr sir_unequal(const InterfererSet& ints, double b, double s_th) {
  if (ints.lambdas.empty()) throw DomainError("sir_unequal: no interferers");
  for (double l : ints.lambdas) require_positive(l, "sir_unequal: Lambda");
  if (min_relative_gap(ints.lambdas) < kDegeneracyGap) {
    throw DegenerateParameterError("sir_unequal: coincident interferer powers; use sir_equal");
  }
  if (zero_threshold(s_th, "sir_unequal")) return {};
  const double logp = log_interference_product(ints.lambdas, s_th);
  double sum = 0.0;
  for (std::size_t n = 0; n < ints.lambdas.size(); ++n) {
    sum += partial_fraction_weight(ints.lambdas, n) / std::sqrt(ints.lambdas[n]);
  }
  return {-std::expm1(logp), std::sqrt(0.5 * b * s_th) * std::exp(logp) * sum};
}

CdfLcr sir_equal(int n, double lambda, double b, double s_th) {
  if (n < 1) throw DomainError("sir_equal: N must be >= 1");
  require_positive(lambda, "sir_equal: Lambda");
  if (zero_threshold(s_th, "sir_equal")) return {};
  const double logp = -n * std::log1p(s_th / lambda);
  const double pref = std::exp(std::lgamma(n + 0.5) - std::lgamma(static_cast<double>(n)));
  return {-std::expm1(logp), pref * std::sqrt(2.0 * b * s_th / (kPi * lambda)) * std::exp(logp)};
}

CdfLcr sinr_single(double gamma0, double gamma1, double b, double s_th) {
  require_positive(gamma0, "sinr_single: gamma0");
  require_positive(gamma1, "sinr_single: gamma1");
  if (zero_threshold(s_th, "sinr_single")) return {};
  const double lambda = gamma0 / gamma1;
  const double logp = -std::log1p(s_th / lambda) - s_th / gamma0;
  const double lcr = std::sqrt(2.0 * b * s_th * gamma1 / (kPi * gamma0)) * std::exp(logp) *
                     specfun::gamma_upper_scaled(1.5, 1.0 / gamma1);
  return {-std::expm1(logp), lcr};
}

CdfLcr sinr_unequal(const RayleighSnrParams& p, const InterfererSet& ints, double b, double s_th) {
  require_positive(p.gamma0, "sinr_unequal: gamma0");
  if (ints.gammas.empty()) throw DomainError("sinr_unequal: interferer INRs required");
  for (double g : ints.gammas) require_positive(g, "sinr_unequal: gamma");
  if (min_relative_gap(ints.gammas) < kDegeneracyGap) {
    throw DegenerateParameterError("sinr_unequal: coincident interferer powers; use sinr_equal");
  }
  if (zero_threshold(s_th, "sinr_unequal")) return {};
  std::vector<double> w;
  std::vector<double> lambdas;
  for (double g : ints.gammas) {
    w.push_back(1.0 / g);
    lambdas.push_back(p.gamma0 / g);
  }
  const double logp = log_interference_product(lambdas, s_th) - s_th / p.gamma0;
  double sum = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    sum += partial_fraction_weight(w, n) * specfun::gamma_upper_scaled(1.5, w[n]) / std::sqrt(w[n]);
  }
  const double lcr = std::sqrt(2.0 * b * s_th / (p.gamma0 * kPi)) * std::exp(logp) * sum;
  return {-std::expm1(logp), lcr};
}

double sinr_equal_bracket(int n, double w, BinomialRoute route) {
  if (n < 1) throw DomainError("sinr_equal_bracket: N must be >= 1");
  require_positive(w, "sinr_equal_bracket: W");
  auto integral = [&] {
    const auto f = [n, w](double u) {
      return std::sqrt(u + w) * std::exp((n - 1) * std::log(u) - u);
    };
    const double upper = n + 60.0 + 10.0 * std::sqrt(static_cast<double>(n));
    if (n == 1) {
      return quadrature::integrate([w](double u) { return std::sqrt(u + w) * std::exp(-u); }, 0.0, upper, 1e-13, 0.0)
          .value;
    }
    return quadrature::integrate(f, 0.0, upper, 1e-13, 0.0).value;
  };
  if (route == BinomialRoute::Integral) return integral();

  double sum = 0.0;
  double mag = 0.0;
  double binom = 1.0;
  for (int j = 0; j < n; ++j) {
    if (j > 0) binom *= static_cast<double>(n - j) / j;
    const int e = n - 1 - j;
    const double term = ((e % 2 == 0) ? 1.0 : -1.0) * std::pow(w, e) * binom * specfun::gamma_upper_scaled(j + 1.5, w);
    sum += term;
    mag += std::abs(term);
  }
  if (route == BinomialRoute::Auto && !(mag <= 1e6 * std::abs(sum))) return integral();
  return sum;
}

CdfLcr sinr_equal(const RayleighSnrParams& p, int n, double gamma, double b, double s_th) {
  require_positive(p.gamma0, "sinr_equal: gamma0");
  require_positive(gamma, "sinr_equal: gamma");
  if (n < 1) throw DomainError("sinr_equal: N must be >= 1");
  if (zero_threshold(s_th, "sinr_equal")) return {};
  const double w = 1.0 / gamma;
  const double lambda = p.gamma0 / gamma;
  const double logp = -s_th / p.gamma0 - n * std::log1p(s_th / lambda);
  const double lcr = std::sqrt(2.0 * b * s_th / (kPi * p.gamma0)) * std::exp(logp - std::lgamma(static_cast<double>(n))) *
                     sinr_equal_bracket(n, w) / std::sqrt(w);
  return {-std::expm1(logp), lcr};
}

// ---- Ricean ----------------------------------------------------------------

double RiceanParams::zeta() const { return std::sqrt(K / (K + 1.0)); }
double RiceanParams::bcap(double b) const { return b / (K + 1.0); }

RiceanSirParams::Derived RiceanSirParams::derived(double b, double s_th) const {
  Derived d{};
  const double r = s_th * ex1 / ex0;
  d.f = beta1 * (K + 1.0) * r / beta0;
  d.alpha = std::sqrt(beta0 * K / (K + 1.0));
  d.kappa1 = 2.0 * (beta0 * b / (K + 1.0) + b * beta1 * r);
  d.kappa2 = (K + 1.0) * r / beta0 + 1.0 / beta1;
  d.kappa3 = 2.0 * std::sqrt(r * K * (K + 1.0) / beta0);
  return d;
}

namespace {

void check_ricean(double K, double phi) {
  if (!(K >= 0.0) || !std::isfinite(K)) throw DomainError("Ricean K-factor must be finite and >= 0");
  if (!std::isfinite(phi)) throw DomainError("Ricean phase slope must be finite");
}

LcrEval to_eval(double pref, const quadrature::QuadratureResult& q) {
  return {pref * q.value, std::abs(pref) * q.est_error, q.evaluations};
}

}  // namespace

LcrEval ricean_snr_lcr(const RiceanParams& p, double b, double s_th, double rel_tol) {
  check_ricean(p.K, p.phi);
  require_positive(p.gamma0, "ricean_snr: gamma0");
  if (zero_threshold(s_th, "ricean_snr")) return {};
  const double K = p.K;
  const double bc = p.bcap(b);
  const double u = s_th / p.gamma0;
  const double c = 2.0 * std::sqrt(K * (K + 1.0) * u);
  const double e = K + (K + 1.0) * u;
  const double pz = p.phi * p.zeta();
  const double root2b = std::sqrt(2.0 * bc);
  const double lin = std::sqrt(kPi / (2.0 * bc)) * pz;
  const auto f = [=](double th) {
    const double ct = c * std::cos(th);
    const double sn = std::sin(th);
    const double a = pz * sn / root2b;
    // cosh(ct) e^{-e} with both exponents kept <= 0
    const double ch = 0.5 * (std::exp(ct - e) + std::exp(-ct - e));
    return ch * (std::exp(-a * a) + lin * sn * specfun::erf(a));
  };
  const auto q = quadrature::integrate(f, 0.0, 0.5 * kPi, rel_tol, 1e-14);
  const double pref = 2.0 * (K + 1.0) / std::pow(kPi, 1.5) * std::sqrt(2.0 * u * bc);
  return to_eval(pref, q);
}

CdfLcr ricean_snr(const RiceanParams& p, double b, double s_th) {
  check_ricean(p.K, p.phi);
  require_positive(p.gamma0, "ricean_snr: gamma0");
  if (zero_threshold(s_th, "ricean_snr")) return {};
  const double cdf = specfun::marcum_q1_complement(std::sqrt(2.0 * p.K), std::sqrt(2.0 * (p.K + 1.0) * s_th / p.gamma0));
  return {cdf, ricean_snr_lcr(p, b, s_th, kRiceanRelTol).value};
}

LcrEval ricean_sir_lcr(const RiceanSirParams& p, double b, double s_th, double rel_tol) {
  check_ricean(p.K, p.phi);
  require_positive(p.beta0, "ricean_sir: beta0");
  require_positive(p.beta1, "ricean_sir: beta1");
  require_positive(p.ex0, "ricean_sir: ex0");
  require_positive(p.ex1, "ricean_sir: ex1");
  if (zero_threshold(s_th, "ricean_sir")) return {};
  const auto d = p.derived(b, s_th);
  const double K = p.K;
  const double ek = std::exp(-K);
  const double sk1 = std::sqrt(d.kappa1);
  const double sk2 = std::sqrt(d.kappa2);
  const double am = d.alpha * p.phi;
  const double gauss = std::sqrt(d.kappa1 / (4.0 * kPi));
  const double c5 = std::sqrt(kPi) / (8.0 * std::pow(d.kappa2, 2.5));
  const double k22 = 4.0 * d.kappa2 * d.kappa2;
  const auto f = [=](double th) {
    const double m = am * std::sin(th);
    const double a = gauss * std::exp(-m * m / d.kappa1) + 0.5 * m * specfun::erfc(-m / sk1);
    const double c = d.kappa3 * std::cos(th);
    const double z = c / (2.0 * sk2);
    // e^{-K} e^{z^2} (1 + erf z) = e^{-K} erfcx(-z); z^2 <= K keeps it bounded.
    const double g = z <= 0.0 ? ek * specfun::erfcx(-z) : 2.0 * std::exp(z * z - K) - ek * specfun::erfcx(z);
    return a * (ek * c / k22 + c5 * (c * c + 2.0 * d.kappa2) * g);
  };
  const auto q = quadrature::integrate_periodic(f, 0.0, 2.0 * kPi, rel_tol, 1e-14);
  const double pref = std::sqrt(s_th * p.ex1 / p.ex0) * 2.0 * (K + 1.0) / (kPi * p.beta0 * p.beta1);
  return to_eval(pref, q);
}

CdfLcr ricean_sir(const RiceanSirParams& p, double b, double s_th) {
  const LcrEval lcr = ricean_sir_lcr(p, b, s_th, kRiceanRelTol);
  if (s_th == 0.0) return {};
  const double f = p.derived(b, s_th).f;
  return {f / (1.0 + f) * std::exp(-p.K / (1.0 + f)), lcr.value};
}

// ---- multi-antenna ---------------------------------------------------------

double FixedFluidParams::varsigma() const { return 1.0 / beta0 - 1.0 / betaf; }

double ArrayCorrParams::c0() const { return ex0 * beta / sigma2; }

double ArrayCorrParams::x1(double b, double s_th) const {
  const double J = coupling.J;
  return J * (b + coupling.c1) * s_th / ((1.0 - J * J) * coupling.c1 * c0());
}

double ArrayCorrParams::x2(double b, double s_th) const {
  const double J = coupling.J;
  return J * (b - coupling.c1) * s_th / ((1.0 - J * J) * coupling.c1 * c0());
}

CdfLcr fixed_fluid_unequal(const FixedFluidParams& p, double b, double s_th) {
  require_positive(p.beta0, "fixed_fluid_unequal: beta0");
  require_positive(p.betaf, "fixed_fluid_unequal: betaf");
  require_positive(p.ex0, "fixed_fluid_unequal: ex0");
  require_positive(p.sigma2, "fixed_fluid_unequal: sigma2");
  if (std::abs(p.beta0 - p.betaf) / p.betaf < kDegeneracyGap) {
    throw DegenerateParameterError("fixed_fluid_unequal: equal branch powers; use fixed_fluid_equal");
  }
  if (zero_threshold(s_th, "fixed_fluid_unequal")) return {};
  const double g = p.sigma2 * s_th / p.ex0;
  const double cdf = hypoexponential_cdf(p.beta0, p.betaf, g);
  // gamma(3/2, vs g) / vs^{3/2} = g^{3/2} H(-vs g), valid for either sign of vs.
  const double lcr = std::sqrt(2.0 * b * p.beta0 / kPi) * std::pow(g, 1.5) *
                     sqrt_exp_moment(-p.varsigma() * g, -g / p.betaf) / (p.beta0 * p.betaf);
  return {cdf, lcr};
}

namespace {

double mrc_equal_level(const MrcEqualParams& p, double s_th, const char* fn) {
  require_positive(p.beta, fn);
  require_positive(p.ex0, fn);
  require_positive(p.sigma2, fn);
  return p.sigma2 * s_th / (p.ex0 * p.beta);
}

}  // namespace

CdfLcr fixed_fluid_equal(const MrcEqualParams& p, double b, double s_th) {
  const double x = mrc_equal_level(p, s_th, "fixed_fluid_equal: parameters");
  if (zero_threshold(s_th, "fixed_fluid_equal")) return {};
  return {specfun::gamma_lower(2.0, x), 2.0 / 3.0 * std::sqrt(2.0 * b / kPi) * std::exp(-x) * std::pow(x, 1.5)};
}

CdfLcr array_independent(const MrcEqualParams& p, double b, double s_th) {
  const double x = mrc_equal_level(p, s_th, "array_independent: parameters");
  if (zero_threshold(s_th, "array_independent")) return {};
  return {specfun::gamma_lower(2.0, x), std::sqrt(2.0 * b / kPi) * std::exp(-x) * std::pow(x, 1.5)};
}

namespace {

void check_array(const ArrayCorrParams& p, const char* fn) {
  if (!(p.coupling.delta > 0.0)) throw DomainError(std::string(fn) + ": element spacing must be positive");
  require_positive(p.beta, fn);
  require_positive(p.ex0, fn);
  require_positive(p.sigma2, fn);
}

}  // namespace

double array_correlated_lcr_integral(const ArrayCorrParams& p, double b, double s_th) {
  check_array(p, "array_correlated");
  if (zero_threshold(s_th, "array_correlated")) return 0.0;
  const double J = p.coupling.J;
  const double c1 = p.coupling.c1;
  const double x = s_th / p.c0();
  const double om = 1.0 - J * J;
  const auto f = [=](double t) { return std::sqrt(1.0 + t * c1 / b) * std::exp((J * t - 1.0) * x / om); };
  const auto q = quadrature::integrate(f, -1.0, 1.0, 1e-13, 0.0);
  return std::sqrt(2.0 * b / kPi) * std::pow(x, 1.5) / (2.0 * om) * q.value;
}

double array_correlated_lcr_dawson(const ArrayCorrParams& p, double b, double s_th) {
  check_array(p, "array_correlated_lcr_dawson");
  const double J = p.coupling.J;
  const double c1 = p.coupling.c1;
  if (!(J > 0.0) || !(c1 > 0.0)) {
    throw DomainError("array_correlated_lcr_dawson: Dawson form needs J > 0 and c1 > 0");
  }
  if (zero_threshold(s_th, "array_correlated_lcr_dawson")) return 0.0;
  const double om = 1.0 - J * J;
  const double x1 = p.x1(b, s_th);
  const double x2 = p.x2(b, s_th);
  const auto term = [](double x) {
    const double r = std::sqrt(x);
    return std::exp(x) * (specfun::dawson(r) - r);
  };
  const double pref = std::sqrt(c1 * om / (2.0 * kPi * J * J * J)) *
                      std::exp(-(c1 + J * b) * s_th / (c1 * om * p.c0()));
  return pref * (term(x2) - term(x1));
}

CdfLcr array_correlated(const ArrayCorrParams& p, double b, double s_th) {
  check_array(p, "array_correlated");
  if (zero_threshold(s_th, "array_correlated")) return {};
  const double J = p.coupling.J;
  const double c1 = p.coupling.c1;
  const double x = s_th / p.c0();
  const double cdf = hypoexponential_cdf(1.0 + J, 1.0 - J, x);
  if (std::abs(c1) < 0.05 * b) {
    // Closed form divides by c1; the integral form is regular there.
    return {cdf, array_correlated_lcr_integral(p, b, s_th)};
  }
  const double om = 1.0 - J * J;
  const double k = J * b / (om * c1);
  const double ya = (1.0 - c1 / b) * x;
  const double yb = (1.0 + c1 / b) * x;
  const double shift = -(c1 + J * b) * x / (c1 * om);
  // int_{y1}^{y2} with orientation following the sign of c1
  const double seg = c1 > 0.0 ? sqrt_exp_segment(k, ya, yb, shift) : -sqrt_exp_segment(k, yb, ya, shift);
  const double lcr = std::sqrt(2.0 * b / kPi) * b / (2.0 * c1 * om) * seg;
  return {cdf, std::max(0.0, lcr)};
}

}  // namespace fas::analytic
