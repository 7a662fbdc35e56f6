// SPDX-License-Identifier: Apache-2.0
#include "fas/correlation.hpp"

#include <cmath>
#include <numbers>

#include "fas/error.hpp"
#include "fas/specfun.hpp"

namespace fas {

CorrelationModel jakes_model() {
  CorrelationModel m;
  m.rho = [](double tau) { return specfun::bessel_j0(2.0 * std::numbers::pi * tau); };
  m.b = std::numbers::pi * std::numbers::pi;
  m.name = "jakes";
  return m;
}

ArrayCoupling array_coupling(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("array_coupling: spacing must be positive and finite");
  }
  const double arg = 2.0 * std::numbers::pi * delta;
  ArrayCoupling c;
  c.delta = delta;
  c.J = specfun::bessel_j0(arg);
  c.c1 = std::numbers::pi / delta * specfun::bessel_j1(arg);
  return c;
}

}  // namespace fas
