// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner: threshold grids, experiment configs, the figure presets
// and the table/curve producers behind the `fas` command line tool.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fas/curve.hpp"
#include "fas/montecarlo.hpp"
#include "fas/scenario.hpp"

namespace fas::exp {

inline constexpr double kJakesCurvature = 9.869604401089358;  // pi^2

struct ThresholdGrid {
  double min = 1e-2;
  double max = 10.0;
  int count = 200;
  bool log = true;

  // "min:max:count:lin|log"; min and max accept a db suffix.
  static ThresholdGrid parse(const std::string& text);
  std::string to_string() const;
  std::vector<double> values() const;  // strictly increasing
  void validate() const;
};

struct ExperimentSpec {
  std::string name = "custom";
  Scenario scenario = scenario::RayleighSnr{};
  ThresholdGrid thresholds;
  std::vector<double> lengths{1.0};
  std::vector<int> ports;
  bool analytic = true;
  std::optional<mc::SimConfig> sim;  // nullopt: analytic only
  double b = kJakesCurvature;

  void validate() const;
  std::string to_json() const;
  static ExperimentSpec from_json(const std::string& text);
  // FNV-1a of to_json(), hex.
  std::string config_hash() const;
};

// A small numeric table (reduction sweeps, neutralization lengths).
struct Table {
  std::string label;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string metadata_json = "{}";

  void write_csv(std::ostream& os) const;
};

struct Output {
  std::vector<CdfCurve> curves;
  std::vector<Table> tables;
};

// Writes every curve and table as <dir>/<prefix>__<label>.csv and returns the
// paths written.
std::vector<std::string> write_output(const Output& out, const std::string& dir, const std::string& prefix);

// Analytic approximation, lower bound per length, plus the marginal cdf.
std::vector<CdfCurve> run_curve(const ExperimentSpec& spec);

// Monte Carlo sup cdf per length (with CIs), discrete-port curves, marginal,
// crossing rate and fade distance on the longest track.
std::vector<CdfCurve> run_simulation(const ExperimentSpec& spec);

// Rayleigh SNR lower-tail outage P(S* < s_th) vs L, with s_th from
// P(SNR_fixed < s_th) = p_T. Columns: p_T, L, outage, reduction, log10_ratio.
Table run_reduction_sweep(const std::vector<double>& pTs, const std::vector<double>& Ls, double gamma0,
                          double b = kJakesCurvature);

struct NeutralizationOptions {
  mc::SimConfig sim;        // used when p_T is not an upper-tail target
  double max_length = 5.0;  // simulated track for the first-passage quantile
  unsigned threads = 0;
};

// Required length vs interferer-to-desired ratio gamma1 / gamma0. p_T >= 0.5
// uses the closed form; lower-tail targets use the simulated first-passage
// quantile. Columns: gamma0, ratio, L.
Table run_neutralization(double pT, const std::vector<double>& gamma0s, const std::vector<double>& ratios,
                         const NeutralizationOptions& options = {}, double b = kJakesCurvature);

// Fixed antenna, fluid antenna, fixed+fluid and correlated moving array (L=1),
// analytic and, when sim is given, simulated.
std::vector<CdfCurve> run_comparison(const ThresholdGrid& grid, const std::optional<mc::SimConfig>& sim,
                                     double b = kJakesCurvature);

// ---- presets ---------------------------------------------------------------

struct FigureOptions {
  std::optional<mc::SimConfig> sim = mc::SimConfig{};  // nullopt: analytic only
  std::optional<ThresholdGrid> thresholds;
  std::optional<std::vector<double>> lengths;
};

// Experiment specs behind the cdf figures; throws ConfigError for names
// without one (fig6, fig8).
std::vector<ExperimentSpec> preset_specs(const std::string& figure);
const std::vector<std::string>& figure_names();  // fig3 .. fig9

Output run_figure(const std::string& figure, const FigureOptions& options);

}  // namespace fas::exp
