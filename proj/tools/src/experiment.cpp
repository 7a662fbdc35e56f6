// SPDX-License-Identifier: Apache-2.0
#include "fas/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fas/analytic.hpp"
#include "fas/error.hpp"
#include "fas/supremum.hpp"

namespace fas::exp {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

json sim_to_json(const mc::SimConfig& s) {
  return {{"grid_step", s.grid_step}, {"track_length", s.track_length}, {"trials", s.trials},
          {"seed", s.seed},           {"generator", mc::to_string(s.generator)}, {"sos_components", s.sos_components}};
}

mc::SimConfig sim_from_json(const json& j) {
  mc::SimConfig s;
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    const json& v = item.value();
    if (k == "grid_step") s.grid_step = v.get<double>();
    else if (k == "track_length") s.track_length = v.get<double>();
    else if (k == "trials") s.trials = v.get<long>();
    else if (k == "seed") s.seed = v.get<std::uint64_t>();
    else if (k == "generator") s.generator = mc::parse_generator(v.get<std::string>());
    else if (k == "sos_components") s.sos_components = v.get<int>();
    else throw ConfigError("sim: unknown key '" + k + "'");
  }
  return s;
}

double quantity(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_quantity(v.get<std::string>());
  throw ConfigError("expected a number");
}

std::string merge_meta(const std::string& base, const json& extra) {
  json m = json::parse(base.empty() ? "{}" : base);
  for (const auto& item : extra.items()) m[item.key()] = item.value();
  return m.dump();
}

json spec_meta(const ExperimentSpec& spec) {
  return {{"experiment", spec.name}, {"config_hash", spec.config_hash()}, {"config", json::parse(spec.to_json())}};
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string length_tag(double L) { return "L" + fmt(L); }

}  // namespace

// ---- ThresholdGrid ---------------------------------------------------------

ThresholdGrid ThresholdGrid::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw ConfigError("thresholds: expected min:max:count:lin|log, got '" + text + "'");
  ThresholdGrid g;
  g.min = parse_quantity(parts[0]);
  g.max = parse_quantity(parts[1]);
  try {
    std::size_t used = 0;
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw ConfigError("");
  } catch (const std::exception&) {
    throw ConfigError("thresholds: bad count '" + parts[2] + "'");
  }
  if (parts[3] == "log") g.log = true;
  else if (parts[3] == "lin") g.log = false;
  else throw ConfigError("thresholds: spacing must be lin or log, got '" + parts[3] + "'");
  g.validate();
  return g;
}

std::string ThresholdGrid::to_string() const {
  return exact(min) + ":" + exact(max) + ":" + std::to_string(count) + (log ? ":log" : ":lin");
}

void ThresholdGrid::validate() const {
  if (!(std::isfinite(min) && std::isfinite(max)) || !(max > min)) throw ConfigError("thresholds: need finite min < max");
  if (count < 2) throw ConfigError("thresholds: need count >= 2");
  if (log && !(min > 0.0)) throw ConfigError("thresholds: log spacing needs min > 0");
  if (min < 0.0) throw ConfigError("thresholds: negative threshold");
}

std::vector<double> ThresholdGrid::values() const {
  validate();
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / (count - 1);
    v[i] = log ? std::exp(std::log(min) + u * (std::log(max) - std::log(min))) : min + u * (max - min);
  }
  v.front() = min;
  v.back() = max;
  return v;
}

// ---- ExperimentSpec --------------------------------------------------------

void ExperimentSpec::validate() const {
  thresholds.validate();
  if (lengths.empty()) throw ConfigError("lengths: at least one track length required");
  for (double L : lengths) {
    if (!(L >= 0.0) || !std::isfinite(L)) throw ConfigError("lengths: must be finite and >= 0");
  }
  for (int p : ports) {
    if (p < 2) throw ConfigError("ports: counts must be >= 2");
  }
  if (!analytic && !sim) throw ConfigError("experiment: enable analytic and/or sim");
  if (sim) sim->validate();
  if (!(b > 0.0)) throw ConfigError("b: must be positive");
}

std::string ExperimentSpec::to_json() const {
  json j;
  j["name"] = name;
  j["scenario"] = json::parse(scenario_to_json(scenario));
  j["thresholds"] = thresholds.to_string();
  j["lengths"] = lengths;
  j["ports"] = ports;
  j["analytic"] = analytic;
  j["b"] = b;
  if (sim) j["sim"] = sim_to_json(*sim);
  return j.dump();
}

ExperimentSpec ExperimentSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentSpec s;
  try {
    for (const auto& item : j.items()) {
      const std::string& k = item.key();
      const json& v = item.value();
      if (k == "name") s.name = v.get<std::string>();
      else if (k == "scenario") s.scenario = scenario_from_json(v.dump());
      else if (k == "thresholds") {
        if (v.is_string()) {
          s.thresholds = ThresholdGrid::parse(v.get<std::string>());
        } else {
          s.thresholds.min = quantity(v.at("min"));
          s.thresholds.max = quantity(v.at("max"));
          s.thresholds.count = v.value("count", 200);
          s.thresholds.log = v.value("spacing", std::string("log")) == "log";
        }
      } else if (k == "lengths") {
        s.lengths.clear();
        for (const auto& x : v) s.lengths.push_back(quantity(x));
      } else if (k == "ports") s.ports = v.get<std::vector<int>>();
      else if (k == "analytic") s.analytic = v.get<bool>();
      else if (k == "b") s.b = quantity(v);
      else if (k == "sim") {
        if (v.is_null() || (v.is_boolean() && !v.get<bool>())) s.sim.reset();
        else s.sim = sim_from_json(v);
      } else throw ConfigError("config: unknown key '" + k + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  s.validate();
  return s;
}

std::string ExperimentSpec::config_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_json()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- output ----------------------------------------------------------------

void Table::write_csv(std::ostream& os) const {
  json meta = json::parse(metadata_json.empty() ? "{}" : metadata_json);
  meta["label"] = label;
  os << "# " << meta.dump() << '\n';
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << '\n';
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      os << (c ? "," : "") << buf;
    }
    os << '\n';
  }
}

std::vector<std::string> write_output(const Output& out, const std::string& dir, const std::string& prefix) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  auto open = [&](const std::string& label) {
    const auto path = (std::filesystem::path(dir) / (prefix + "__" + label + ".csv")).string();
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    paths.push_back(path);
    return f;
  };
  for (const auto& c : out.curves) {
    auto f = open(c.label);
    fas::write_csv(c, f);
  }
  for (const auto& t : out.tables) {
    auto f = open(t.label);
    t.write_csv(f);
  }
  return paths;
}

// ---- runners ---------------------------------------------------------------

std::vector<CdfCurve> run_curve(const ExperimentSpec& spec) {
  spec.validate();
  const auto t = spec.thresholds.values();
  std::vector<analytic::CdfLcr> eval(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) eval[i] = evaluate(spec.scenario, spec.b, t[i]);

  const json base = spec_meta(spec);
  std::vector<CdfCurve> out;
  CdfCurve marginal;
  marginal.label = "marginal";
  marginal.metadata_json = merge_meta(base.dump(), {{"curve", "marginal"}, {"source", "analytic"}});
  for (std::size_t i = 0; i < t.size(); ++i) marginal.points.push_back({t[i], eval[i].cdf, {}, {}});
  out.push_back(marginal);

  for (double L : spec.lengths) {
    CdfCurve approx, bound;
    approx.label = "approx_" + length_tag(L);
    bound.label = "bound_" + length_tag(L);
    approx.metadata_json = merge_meta(base.dump(), {{"curve", "approx"}, {"source", "analytic"}, {"L", L}});
    bound.metadata_json = merge_meta(base.dump(), {{"curve", "bound"}, {"source", "analytic"}, {"L", L}});
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto r = sup_cdf(eval[i].cdf, eval[i].lcr, L, t[i]);
      approx.points.push_back({t[i], r.approx_cdf, {}, {}});
      bound.points.push_back({t[i], r.lower_bound, {}, {}});
    }
    out.push_back(std::move(approx));
    out.push_back(std::move(bound));
  }
  return out;
}

std::vector<CdfCurve> run_simulation(const ExperimentSpec& spec) {
  spec.validate();
  if (!spec.sim) throw ConfigError("simulate: no sim block configured");
  mc::SimConfig sim = *spec.sim;
  sim.track_length = *std::max_element(spec.lengths.begin(), spec.lengths.end());
  sim.validate();
  mc::SimOptions opt;
  opt.lengths = spec.lengths;
  opt.ports = spec.ports;
  const auto summary = mc::simulate(spec.scenario, sim, spec.thresholds.values(), opt);

  const json base = spec_meta(spec);
  std::vector<CdfCurve> out;
  auto add = [&](CdfCurve c, const std::string& label) {
    c.label = label;
    c.metadata_json = merge_meta(c.metadata_json, base);
    out.push_back(std::move(c));
  };
  add(summary.marginal_curve(), "sim_marginal");
  for (std::size_t q = 0; q < spec.lengths.size(); ++q) add(summary.sup_curve(q), "sim_" + length_tag(spec.lengths[q]));
  for (std::size_t q = 0; q < spec.ports.size(); ++q) {
    add(summary.port_curve(q), "sim_ports" + std::to_string(spec.ports[q]) + "_" + length_tag(sim.track_length));
  }
  add(summary.lcr_curve(), "sim_lcr_" + length_tag(sim.track_length));
  add(summary.afd_curve(), "sim_afd_" + length_tag(sim.track_length));
  return out;
}

Table run_reduction_sweep(const std::vector<double>& pTs, const std::vector<double>& Ls, double gamma0, double b) {
  if (!(gamma0 > 0.0)) throw ConfigError("reduce: gamma0 must be positive");
  Table t;
  t.label = "reduction";
  t.columns = {"p_T", "L", "outage", "reduction", "log10_ratio"};
  t.metadata_json = json{{"experiment", "reduction"}, {"gamma0", gamma0}, {"b", b}, {"source", "analytic"}}.dump();
  for (double pT : pTs) {
    if (!(pT > 0.0 && pT < 1.0)) throw ConfigError("reduce: p_T must lie in (0, 1)");
    const double s_th = -gamma0 * std::log1p(-pT);
    const auto e = analytic::rayleigh_snr({gamma0}, b, s_th);
    for (double L : Ls) {
      if (!(L >= 0.0)) throw ConfigError("reduce: lengths must be >= 0");
      const double outage = sup_cdf(e.cdf, e.lcr, L, s_th).approx_cdf;
      // log10(outage / p_T) directly, outage underflows long before the ratio matters
      const double log_ratio = (std::log(e.cdf) - L * e.lcr / e.cdf - std::log(pT)) / std::log(10.0);
      t.rows.push_back({pT, L, outage, std::pow(10.0, -log_ratio), log_ratio});
    }
  }
  return t;
}

Table run_neutralization(double pT, const std::vector<double>& gamma0s, const std::vector<double>& ratios,
                         const NeutralizationOptions& options, double b) {
  if (!(pT > 0.0 && pT < 1.0)) throw ConfigError("neutralize: p_T must lie in (0, 1)");
  const bool closed_form = pT >= 0.5;
  Table t;
  t.label = "neutralization_pT" + fmt(pT);
  t.columns = {"gamma0", "ratio", "L"};
  json meta = {{"experiment", "neutralization"}, {"p_T", pT}, {"b", b},
               {"source", closed_form ? "closed_form" : "simulation"}};
  if (!closed_form) {
    json sim = sim_to_json(options.sim);
    sim["track_length"] = options.max_length;
    meta["sim"] = sim;
    meta["quantile"] = "first-passage distance";
  }
  t.metadata_json = meta.dump();

  for (double g0 : gamma0s) {
    if (!(g0 > 0.0)) throw ConfigError("neutralize: gamma0 must be positive");
    const double s_th = -g0 * std::log1p(-pT);
    for (double r : ratios) {
      if (!(r > 0.0)) throw ConfigError("neutralize: ratios must be positive");
      const double g1 = r * g0;
      double L;
      if (closed_form) {
        L = neutralization_length(s_th, g0, g1, b);
      } else {
        mc::SimConfig sim = options.sim;
        sim.track_length = options.max_length;
        auto d = mc::first_passage_distances(scenario::SinrSingle{g0, g1}, sim, s_th, options.threads);
        // smallest L with P(D > L) <= p_T
        const auto k = static_cast<std::size_t>(std::ceil((1.0 - pT) * static_cast<double>(d.size()))) - 1;
        std::nth_element(d.begin(), d.begin() + static_cast<long>(k), d.end());
        L = d[k];
        if (!std::isfinite(L)) L = std::numeric_limits<double>::quiet_NaN();  // beyond the simulated track
      }
      t.rows.push_back({g0, r, L});
    }
  }
  return t;
}

std::vector<CdfCurve> run_comparison(const ThresholdGrid& grid, const std::optional<mc::SimConfig>& sim, double b) {
  struct Layout {
    std::string label;
    Scenario scenario;
    double L;
  };
  const analytic::MrcEqualParams mrc{1.0, 1.0, 1.0};
  const std::vector<Layout> layouts = {
      {"fixed", scenario::RayleighSnr{1.0}, 0.0},
      {"fluid", scenario::RayleighSnr{1.0}, 1.0},
      {"fixed_fluid", scenario::FixedFluidEqual{mrc}, 1.0},
      {"corr_array", scenario::ArrayCorrelated{0.25, mrc}, 1.0},
  };
  std::vector<CdfCurve> out;
  for (const auto& l : layouts) {
    ExperimentSpec spec;
    spec.name = "comparison";
    spec.scenario = l.scenario;
    spec.thresholds = grid;
    spec.lengths = {l.L};
    spec.b = b;
    spec.sim = sim;
    for (auto& c : run_curve(spec)) {
      if (c.label.rfind("approx_", 0) == 0) {
        c.label = l.label + "_approx";
        out.push_back(std::move(c));
      }
    }
    if (sim) {
      for (auto& c : run_simulation(spec)) {
        if (c.label == "sim_" + length_tag(l.L)) {
          c.label = l.label + "_sim";
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

}  // namespace fas::exp
