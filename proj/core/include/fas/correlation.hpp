// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>

namespace fas {

// Spatial autocorrelation rho(tau) of a unit-power fading field, tau in
// wavelengths, with rho(tau) = 1 - b tau^2 + o(tau^2) near the origin.
struct CorrelationModel {
  std::function<double(double)> rho;
  double b = 0.0;
  std::string name;
};

// rho(tau) = J0(2 pi tau), b = pi^2 (isotropic scattering).
CorrelationModel jakes_model();

// Constants of a rigid two-element array with spacing delta moving along the
// track: J = J0(2 pi delta) is the inter-element correlation and
// c1 = (pi / delta) J1(2 pi delta) the cross-curvature term.
struct ArrayCoupling {
  double delta = 0.0;
  double J = 0.0;
  double c1 = 0.0;
};

ArrayCoupling array_coupling(double delta);

}  // namespace fas
