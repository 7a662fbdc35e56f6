// SPDX-License-Identifier: Apache-2.0
//
// Adaptive Gauss-Kronrod (7/15) integration on finite intervals.
#pragma once

#include <functional>

namespace fas::quadrature {

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;  // sum over accepted panels of |K15 - G7|
  long evaluations = 0;
};

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  int initial_panels = 1;
};

using Integrand = std::function<double(double)>;

// Throws DomainError for a >= b or non-finite bounds, NonConvergenceError
// (carrying the partial sum) when max_subdivisions is exhausted.
QuadratureResult integrate(const Integrand& f, double a, double b, const Options& opts);
QuadratureResult integrate(const Integrand& f, double a, double b, double rel_tol, double abs_tol);

// Same as integrate() but starts from 8 uniform panels; meant for integrands
// that are periodic over [a, b].
QuadratureResult integrate_periodic(const Integrand& f, double a, double b, double rel_tol, double abs_tol);

}  // namespace fas::quadrature
