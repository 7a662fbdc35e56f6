// SPDX-License-Identifier: Apache-2.0
//
// Tagged description of a receiver layout and fading configuration, covering
// the twelve analytic cdf/LCR pairs.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fas/analytic.hpp"

namespace fas {

namespace scenario {

struct RayleighSnr {
  double gamma0 = 1.0;
};
struct SirUnequal {
  std::vector<double> lambdas;
};
struct SirEqual {
  int n = 1;
  double lambda = 1.0;
};
struct SinrSingle {
  double gamma0 = 1.0;
  double gamma1 = 1.0;
};
struct SinrUnequal {
  double gamma0 = 1.0;
  std::vector<double> gammas;
};
struct SinrEqual {
  double gamma0 = 1.0;
  int n = 1;
  double gamma = 1.0;
};
struct RiceanSnr {
  analytic::RiceanParams params;
};
struct RiceanSir {
  analytic::RiceanSirParams params;
};
struct FixedFluidUnequal {
  analytic::FixedFluidParams params;
};
struct FixedFluidEqual {
  analytic::MrcEqualParams params;
};
struct ArrayIndependent {
  analytic::MrcEqualParams params;
};
struct ArrayCorrelated {
  double delta = 0.25;
  analytic::MrcEqualParams params;
};

}  // namespace scenario

using Scenario = std::variant<scenario::RayleighSnr, scenario::SirUnequal, scenario::SirEqual, scenario::SinrSingle,
                              scenario::SinrUnequal, scenario::SinrEqual, scenario::RiceanSnr, scenario::RiceanSir,
                              scenario::FixedFluidUnequal, scenario::FixedFluidEqual, scenario::ArrayIndependent,
                              scenario::ArrayCorrelated>;

// Stable identifier, e.g. "rayleigh_snr", "sinr_unequal".
std::string scenario_kind(const Scenario& s);

// Marginal cdf and crossing rate at s_th for correlation curvature b.
analytic::CdfLcr evaluate(const Scenario& s, double b, double s_th);

// JSON object {"kind": ..., <parameters>}. Numeric parameters may also be
// given as strings with a "db" suffix ("5db"), converted to linear scale.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& json);

// "3.5" -> 3.5, "5db" / "5dB" -> 10^(5/10); throws ConfigError otherwise.
double parse_quantity(const std::string& text);

}  // namespace fas
