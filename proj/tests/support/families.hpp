// SPDX-License-Identifier: Apache-2.0
//
// Random parameter families for the property suites, one per scenario kind.
#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fas/scenario.hpp"

namespace family {

inline constexpr int kKinds = 12;

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// n values in [lo, hi] with pairwise log gaps of at least 2%.
inline std::vector<double> distinct(std::mt19937_64& rng, int n, double lo, double hi) {
  std::vector<double> v;
  while (static_cast<int>(v.size()) < n) {
    const double x = log_uniform(rng, lo, hi);
    bool ok = true;
    for (double y : v) ok = ok && std::abs(std::log(x / y)) > 0.02;
    if (ok) v.push_back(x);
  }
  return v;
}

inline fas::Scenario draw(std::mt19937_64& rng, int kind) {
  using namespace fas;
  const double two_pi = 2.0 * std::numbers::pi;
  std::uniform_int_distribution<int> n14(1, 4), n16(1, 6);
  switch (kind) {
    case 0:
      return scenario::RayleighSnr{log_uniform(rng, 0.1, 10.0)};
    case 1:
      return scenario::SirUnequal{distinct(rng, n14(rng), 0.1, 10.0)};
    case 2:
      return scenario::SirEqual{n16(rng), log_uniform(rng, 0.1, 10.0)};
    case 3:
      return scenario::SinrSingle{log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.05, 20.0)};
    case 4: {
      const double g0 = log_uniform(rng, 0.1, 10.0);
      return scenario::SinrUnequal{g0, distinct(rng, n14(rng), 0.05, 10.0)};
    }
    case 5:
      return scenario::SinrEqual{log_uniform(rng, 0.1, 10.0), n16(rng), log_uniform(rng, 0.05, 10.0)};
    case 6:
      return scenario::RiceanSnr{{uniform(rng, 0.0, 10.0), uniform(rng, 0.0, two_pi), log_uniform(rng, 0.1, 10.0)}};
    case 7: {
      analytic::RiceanSirParams p;
      p.beta0 = log_uniform(rng, 0.1, 10.0);
      p.beta1 = log_uniform(rng, 0.1, 10.0);
      p.K = uniform(rng, 0.0, 10.0);
      p.phi = uniform(rng, 0.0, two_pi);
      return scenario::RiceanSir{p};
    }
    case 8: {
      const auto b = distinct(rng, 2, 0.1, 10.0);
      return scenario::FixedFluidUnequal{{b[0], b[1], 1.0, 1.0}};
    }
    case 9:
      return scenario::FixedFluidEqual{{log_uniform(rng, 0.1, 10.0), 1.0, 1.0}};
    case 10:
      return scenario::ArrayIndependent{{log_uniform(rng, 0.1, 10.0), 1.0, 1.0}};
    default:
      return scenario::ArrayCorrelated{uniform(rng, 0.05, 1.0), {log_uniform(rng, 0.1, 10.0), 1.0, 1.0}};
  }
}

}  // namespace family
