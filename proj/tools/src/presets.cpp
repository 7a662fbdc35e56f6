// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "fas/error.hpp"
#include "fas/experiment.hpp"

namespace fas::exp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ExperimentSpec make(const std::string& name, Scenario s, std::vector<double> lengths, ThresholdGrid grid,
                    std::vector<int> ports = {}) {
  ExperimentSpec e;
  e.name = name;
  e.scenario = std::move(s);
  e.lengths = std::move(lengths);
  e.thresholds = grid;
  e.ports = std::move(ports);
  return e;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v = linspace(std::log10(a), std::log10(b), n);
  for (double& x : v) x = std::pow(10.0, x);
  return v;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
  return names;
}

std::vector<ExperimentSpec> preset_specs(const std::string& figure) {
  const analytic::MrcEqualParams mrc{1.0, 1.0, 1.0};
  if (figure == "fig3") {
    return {make("snr", scenario::RayleighSnr{1.0}, {0.5, 1.0, 5.0}, {1e-2, 20.0, 200, true})};
  }
  if (figure == "fig4") {
    const ThresholdGrid g{1e-2, 100.0, 200, true};
    return {make("sir", scenario::SirUnequal{{0.6, 0.4}}, {1.0}, g, {5, 20}),
            make("sinr", scenario::SinrUnequal{1.0, {1.0 / 0.6, 1.0 / 0.4}}, {1.0}, g, {5, 20})};
  }
  if (figure == "fig5") {
    const ThresholdGrid g{1e-2, 100.0, 200, true};
    analytic::RiceanSirParams sir;
    sir.beta0 = 1.0;
    sir.beta1 = 10.0;
    sir.ex0 = 1.0;
    sir.ex1 = 1.0;
    sir.K = 1.0;
    sir.phi = kTwoPi;
    return {make("snr_K1", scenario::RiceanSnr{{1.0, kTwoPi, 1.0}}, {1.0}, g),
            make("snr_K5", scenario::RiceanSnr{{5.0, kTwoPi, 1.0}}, {1.0}, g),
            make("sir_K1", scenario::RiceanSir{sir}, {1.0}, g)};
  }
  if (figure == "fig7") {
    const ThresholdGrid g{1e-2, 30.0, 200, true};
    return {make("fixed_fluid", scenario::FixedFluidEqual{mrc}, {1.0, 3.0}, g),
            make("array", scenario::ArrayCorrelated{0.25, mrc}, {0.0, 0.5, 1.0}, g)};
  }
  throw ConfigError("no cdf preset named '" + figure + "'");
}

Output run_figure(const std::string& figure, const FigureOptions& options) {
  Output out;
  if (figure == "fig6") {
    out.tables.push_back(run_reduction_sweep({0.01, 0.1, 0.5}, linspace(0.0, 2.0, 201), 1.0));
    return out;
  }
  if (figure == "fig8") {
    const std::vector<double> g0s = {1.0, std::pow(10.0, 0.5), 10.0};  // 0, 5, 10 dB
    const auto ratios = logspace(0.1, 10.0, 21);
    out.tables.push_back(run_neutralization(0.9, g0s, ratios));
    if (options.sim) {
      NeutralizationOptions n;
      n.sim = *options.sim;
      out.tables.push_back(run_neutralization(0.1, g0s, ratios, n));
    }
    return out;
  }
  if (figure == "fig9") {
    out.curves = run_comparison(options.thresholds.value_or(ThresholdGrid{1e-2, 30.0, 200, true}), options.sim);
    return out;
  }
  for (ExperimentSpec spec : preset_specs(figure)) {
    if (options.thresholds) spec.thresholds = *options.thresholds;
    if (options.lengths) spec.lengths = *options.lengths;
    spec.sim = options.sim;
    auto add = [&](std::vector<CdfCurve> curves) {
      for (auto& c : curves) {
        c.label = spec.name + "_" + c.label;
        out.curves.push_back(std::move(c));
      }
    };
    add(run_curve(spec));
    if (spec.sim) add(run_simulation(spec));
  }
  return out;
}

}  // namespace fas::exp
