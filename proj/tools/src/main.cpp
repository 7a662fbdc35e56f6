// SPDX-License-Identifier: Apache-2.0
//
// fas: analytic curves, Monte Carlo runs and figure presets as CSV files.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fas/error.hpp"
#include "fas/experiment.hpp"

namespace {

using namespace fas;

constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitInfeasible = 4;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_quantity(item));
  }
  if (out.empty()) throw ConfigError("empty list '" + text + "'");
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Common {
  std::string config;
  std::string scenario;
  std::string out = "out";
  std::string thresholds;
  std::string lengths;
  std::string generator;
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<double> grid_step;
  bool no_sim = false;

  void add_to(CLI::App* app, bool with_sim) {
    app->add_option("--config", config, "JSON experiment config");
    app->add_option("--out", out, "output directory")->capture_default_str();
    app->add_option("--thresholds", thresholds, "min:max:count:lin|log (db suffix allowed)");
    app->add_option("--lengths", lengths, "comma-separated track lengths in wavelengths");
    app->add_flag("--no-sim", no_sim, "analytic curves only");
    if (!with_sim) return;
    app->add_option("--seed", seed, "base seed");
    app->add_option("--trials", trials, "Monte Carlo trials");
    app->add_option("--grid-step", grid_step, "grid spacing in wavelengths");
    app->add_option("--generator", generator, "cholesky | sos");
  }

  // Defaults < config file < flags.
  void apply_sim(std::optional<mc::SimConfig>& sim, bool enable_default) const {
    if (no_sim) {
      sim.reset();
      return;
    }
    if (!sim && (enable_default || trials || seed || grid_step || !generator.empty())) sim = mc::SimConfig{};
    if (!sim) return;
    if (seed) sim->seed = *seed;
    if (trials) sim->trials = *trials;
    if (grid_step) sim->grid_step = *grid_step;
    if (!generator.empty()) sim->generator = mc::parse_generator(generator);
    sim->validate();
  }

  exp::ExperimentSpec spec() const {
    exp::ExperimentSpec s = config.empty() ? exp::ExperimentSpec{} : exp::ExperimentSpec::from_json(slurp(config));
    if (!scenario.empty()) s.scenario = scenario_from_json(scenario);
    if (!thresholds.empty()) s.thresholds = exp::ThresholdGrid::parse(thresholds);
    if (!lengths.empty()) s.lengths = parse_list(lengths);
    return s;
  }
};

void report(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::cout << p << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Fluid antenna supremum cdf and level crossing experiments"};
  app.require_subcommand(1);

  Common curve_opts, sim_opts, cmp_opts, fig_opts, neut_opts;

  auto* curve = app.add_subcommand("curve", "analytic approximation, lower bound and marginal cdf");
  curve_opts.add_to(curve, false);
  curve->add_option("--scenario", curve_opts.scenario, "scenario JSON, e.g. {\"kind\":\"rayleigh_snr\"}");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo sup cdf, ports, crossing rate and fade distance");
  sim_opts.add_to(simulate, true);
  simulate->add_option("--scenario", sim_opts.scenario, "scenario JSON");
  std::string ports;
  simulate->add_option("--ports", ports, "comma-separated discrete port counts");

  auto* compare = app.add_subcommand("compare", "fixed, fluid, fixed+fluid and moving-array layouts");
  cmp_opts.add_to(compare, true);

  auto* reduce = app.add_subcommand("reduce", "lower-tail outage reduction vs track length");
  std::string reduce_pT = "0.01,0.1,0.5", reduce_L = "0:2:201", reduce_g0 = "1", reduce_out = "out";
  reduce->add_option("--pT", reduce_pT, "comma-separated target probabilities")->capture_default_str();
  reduce->add_option("--lengths", reduce_L, "comma list or start:stop:count")->capture_default_str();
  reduce->add_option("--gamma0", reduce_g0, "average SNR (db suffix allowed)")->capture_default_str();
  reduce->add_option("--out", reduce_out, "output directory")->capture_default_str();

  auto* neutralize = app.add_subcommand("neutralize", "track length that neutralizes one interferer");
  neut_opts.add_to(neutralize, true);
  std::string neut_pT = "0.9", neut_g0 = "0db,5db,10db", neut_ratios = "0.1:10:21";
  double neut_max_len = 5.0;
  neutralize->add_option("--pT", neut_pT, "target probability (>= 0.5 closed form, else simulated)")
      ->capture_default_str();
  neutralize->add_option("--gamma0", neut_g0, "comma-separated average SNRs")->capture_default_str();
  neutralize->add_option("--ratios", neut_ratios, "interferer-to-desired ratios: list or min:max:count (log)")
      ->capture_default_str();
  neutralize->add_option("--max-length", neut_max_len, "simulated track for lower-tail targets")->capture_default_str();

  auto* figures = app.add_subcommand("figures", "figure presets");
  fig_opts.add_to(figures, true);
  std::string figure;
  figures->add_option("figure", figure, "fig3 .. fig9 or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  auto range = [](const std::string& text, bool log) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) return parse_list(text);
    exp::ThresholdGrid g{parse_quantity(parts[0]), parse_quantity(parts[1]), std::stoi(parts[2]), log};
    if (!log && g.min == 0.0 && g.max > 0.0) {
      // linear grids may start at 0
      std::vector<double> v(static_cast<std::size_t>(g.count));
      for (int i = 0; i < g.count; ++i) v[i] = g.max * i / (g.count - 1);
      return v;
    }
    return g.values();
  };

  if (*curve) {
    auto spec = curve_opts.spec();
    spec.sim.reset();
    spec.analytic = true;
    exp::Output out{exp::run_curve(spec), {}};
    report(exp::write_output(out, curve_opts.out, spec.name));
  } else if (*simulate) {
    auto spec = sim_opts.spec();
    sim_opts.apply_sim(spec.sim, true);
    if (!ports.empty()) {
      spec.ports.clear();
      for (double p : parse_list(ports)) spec.ports.push_back(static_cast<int>(p));
    }
    spec.validate();
    exp::Output out;
    if (spec.analytic) out.curves = exp::run_curve(spec);
    if (spec.sim) {
      for (auto& c : exp::run_simulation(spec)) out.curves.push_back(std::move(c));
    }
    report(exp::write_output(out, sim_opts.out, spec.name));
  } else if (*compare) {
    std::optional<mc::SimConfig> sim;
    cmp_opts.apply_sim(sim, true);
    const auto grid = cmp_opts.thresholds.empty() ? exp::ThresholdGrid{1e-2, 30.0, 200, true}
                                                  : exp::ThresholdGrid::parse(cmp_opts.thresholds);
    exp::Output out{exp::run_comparison(grid, sim), {}};
    report(exp::write_output(out, cmp_opts.out, "compare"));
  } else if (*reduce) {
    const auto g0 = parse_list(reduce_g0);
    exp::Output out{{}, {exp::run_reduction_sweep(parse_list(reduce_pT), range(reduce_L, false), g0.at(0))}};
    report(exp::write_output(out, reduce_out, "reduce"));
  } else if (*neutralize) {
    exp::NeutralizationOptions opt;
    std::optional<mc::SimConfig> sim;
    neut_opts.apply_sim(sim, true);
    if (sim) opt.sim = *sim;
    opt.max_length = neut_max_len;
    const auto pT = parse_list(neut_pT);
    exp::Output out;
    for (double p : pT) {
      if (p < 0.5 && !sim) throw ConfigError("neutralize: lower-tail targets need simulation (drop --no-sim)");
      out.tables.push_back(exp::run_neutralization(p, parse_list(neut_g0), range(neut_ratios, true), opt));
    }
    report(exp::write_output(out, neut_opts.out, "neutralize"));
  } else if (*figures) {
    exp::FigureOptions opt;
    fig_opts.apply_sim(opt.sim, true);
    if (!fig_opts.thresholds.empty()) opt.thresholds = exp::ThresholdGrid::parse(fig_opts.thresholds);
    if (!fig_opts.lengths.empty()) opt.lengths = parse_list(fig_opts.lengths);
    std::vector<std::string> names;
    if (figure == "all") names = exp::figure_names();
    else names = {figure};
    for (const auto& name : names) {
      bool known = false;
      for (const auto& n : exp::figure_names()) known = known || n == name;
      if (!known) throw ConfigError("unknown figure '" + name + "'");
      report(exp::write_output(exp::run_figure(name, opt), fig_opts.out, name));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fas::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fas::DomainError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fas::NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const fas::InfeasibleTargetError& e) {
    std::cerr << "infeasible target: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
