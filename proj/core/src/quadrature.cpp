// SPDX-License-Identifier: Apache-2.0
#include "fas/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "fas/error.hpp"

namespace fas::quadrature {
namespace {

// Kronrod nodes on [0, 1]; odd indices are the Gauss-7 nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) {
      g += kWg[j / 2] * (f1 + f2);
    }
  }
  if (!std::isfinite(k)) {
    throw DomainError("integrate: integrand returned a non-finite value");
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const Options& opts) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("integrate: require finite a < b");
  }
  std::priority_queue<Panel> heap;
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
  const int n0 = std::max(1, opts.initial_panels);
  const double w = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + i * w;
    const double hi = i + 1 == n0 ? b : a + (i + 1) * w;
    Panel p = gk15(f, lo, hi);
    evals += 15;
    value += p.value;
    error += p.error;
    heap.push(p);
  }
  int splits = 0;
  while (error > std::max(opts.rel_tol * std::abs(value), opts.abs_tol)) {
    if (splits >= opts.max_subdivisions) {
      throw NonConvergenceError("integrate: maximum subdivisions exceeded", value, error, evals);
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw NonConvergenceError("integrate: panel width reached machine resolution", value, error, evals);
    }
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    evals += 30;
    ++splits;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of incremental updates.
  double v = 0.0;
  double e = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  return {v, e, evals};
}

QuadratureResult integrate(const Integrand& f, double a, double b, double rel_tol, double abs_tol) {
  Options o;
  o.rel_tol = rel_tol;
  o.abs_tol = abs_tol;
  return integrate(f, a, b, o);
}

QuadratureResult integrate_periodic(const Integrand& f, double a, double b, double rel_tol, double abs_tol) {
  Options o;
  o.rel_tol = rel_tol;
  o.abs_tol = abs_tol;
  o.initial_panels = 8;
  return integrate(f, a, b, o);
}

}  // namespace fas::quadrature
