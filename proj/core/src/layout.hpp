// SPDX-License-Identifier: Apache-2.0
//
// Channel sources behind each scenario and the metric they combine into:
// S = scale * sum_desired |h|^2 / (noise + sum_interferers |h|^2).
#pragma once

#include <string>
#include <vector>

#include "fas/montecarlo.hpp"
#include "fas/scenario.hpp"

namespace fas::mc::detail {

struct SourceSpec {
  enum class Kind { Spatial, Constant, Ricean, CoupledPair };
  Kind kind = Kind::Spatial;
  Channel::Role role = Channel::Role::Desired;
  std::string name;
  double power = 1.0;
  double K = 0.0;      // Ricean
  double phi = 0.0;    // Ricean
  double delta = 0.0;  // coupled pair spacing
};

struct Layout {
  std::vector<SourceSpec> sources;
  double scale = 1.0;
  double noise = 1.0;
};

Layout make_layout(const Scenario& scenario);
void metric(const FieldRealization& field, const Layout& layout, std::vector<double>& out);

}  // namespace fas::mc::detail
