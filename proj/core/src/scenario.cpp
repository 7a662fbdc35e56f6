// SPDX-License-Identifier: Apache-2.0
#include "fas/scenario.hpp"

#include <type_traits>

namespace fas {

namespace {

template <class>
inline constexpr bool kAlwaysFalse = false;

}  // namespace

std::string scenario_kind(const Scenario& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, scenario::RayleighSnr>) return "rayleigh_snr";
        else if constexpr (std::is_same_v<T, scenario::SirUnequal>) return "sir_unequal";
        else if constexpr (std::is_same_v<T, scenario::SirEqual>) return "sir_equal";
        else if constexpr (std::is_same_v<T, scenario::SinrSingle>) return "sinr_single";
        else if constexpr (std::is_same_v<T, scenario::SinrUnequal>) return "sinr_unequal";
        else if constexpr (std::is_same_v<T, scenario::SinrEqual>) return "sinr_equal";
        else if constexpr (std::is_same_v<T, scenario::RiceanSnr>) return "ricean_snr";
        else if constexpr (std::is_same_v<T, scenario::RiceanSir>) return "ricean_sir";
        else if constexpr (std::is_same_v<T, scenario::FixedFluidUnequal>) return "fixed_fluid_unequal";
        else if constexpr (std::is_same_v<T, scenario::FixedFluidEqual>) return "fixed_fluid_equal";
        else if constexpr (std::is_same_v<T, scenario::ArrayIndependent>) return "array_independent";
        else if constexpr (std::is_same_v<T, scenario::ArrayCorrelated>) return "array_correlated";
        else static_assert(kAlwaysFalse<T>);
      },
      s);
}

analytic::CdfLcr evaluate(const Scenario& s, double b, double s_th) {
  using namespace analytic;
  return std::visit(
      [&](const auto& v) -> CdfLcr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, scenario::RayleighSnr>) {
          return rayleigh_snr({v.gamma0}, b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::SirUnequal>) {
          return sir_unequal(InterfererSet::for_sir(v.lambdas), b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::SirEqual>) {
          return sir_equal(v.n, v.lambda, b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::SinrSingle>) {
          return sinr_single(v.gamma0, v.gamma1, b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::SinrUnequal>) {
          return sinr_unequal({v.gamma0}, InterfererSet::for_sinr(v.gamma0, v.gammas), b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::SinrEqual>) {
          return sinr_equal({v.gamma0}, v.n, v.gamma, b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::RiceanSnr>) {
          return ricean_snr(v.params, b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::RiceanSir>) {
          return ricean_sir(v.params, b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::FixedFluidUnequal>) {
          return fixed_fluid_unequal(v.params, b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::FixedFluidEqual>) {
          return fixed_fluid_equal(v.params, b, s_th);
        } else if constexpr (std::is_same_v<T, scenario::ArrayIndependent>) {
          return array_independent(v.params, b, s_th);
        } else {
          ArrayCorrParams p;
          p.coupling = array_coupling(v.delta);
          p.beta = v.params.beta;
          p.ex0 = v.params.ex0;
          p.sigma2 = v.params.sigma2;
          return array_correlated(p, b, s_th);
        }
      },
      s);
}

}  // namespace fas

// ---- JSON ------------------------------------------------------------------

#include <cmath>
#include <set>

#include <json.hpp>

#include "fas/error.hpp"

namespace fas {
namespace {

using nlohmann::json;

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_quantity(v.get<std::string>());
  throw ConfigError(std::string("scenario: '") + key + "' must be a number");
}

int integer(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError(std::string("scenario: '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ConfigError(std::string("scenario: '") + key + "' must be an array");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    out.push_back(v.is_string() ? parse_quantity(v.get<std::string>()) : v.get<double>());
  }
  return out;
}

void check_keys(const json& j, std::set<std::string> allowed) {
  allowed.insert("kind");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ConfigError("scenario: unknown key '" + item.key() + "'");
  }
}

json mrc_json(const analytic::MrcEqualParams& p) { return {{"beta", p.beta}, {"ex0", p.ex0}, {"sigma2", p.sigma2}}; }

analytic::MrcEqualParams mrc_from(const json& j) {
  return {number(j, "beta", 1.0), number(j, "ex0", 1.0), number(j, "sigma2", 1.0)};
}

}  // namespace

double parse_quantity(const std::string& text) {
  std::string s = text;
  bool db = false;
  if (s.size() > 2) {
    std::string tail = s.substr(s.size() - 2);
    for (char& c : tail) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (tail == "db") {
      db = true;
      s.resize(s.size() - 2);
    }
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse quantity '" + text + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError("cannot parse quantity '" + text + "'");
  return db ? std::pow(10.0, v / 10.0) : v;
}

std::string scenario_to_json(const Scenario& s) {
  json j = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, scenario::RayleighSnr>) return {{"gamma0", v.gamma0}};
        else if constexpr (std::is_same_v<T, scenario::SirUnequal>) return {{"lambdas", v.lambdas}};
        else if constexpr (std::is_same_v<T, scenario::SirEqual>) return {{"n", v.n}, {"lambda", v.lambda}};
        else if constexpr (std::is_same_v<T, scenario::SinrSingle>) return {{"gamma0", v.gamma0}, {"gamma1", v.gamma1}};
        else if constexpr (std::is_same_v<T, scenario::SinrUnequal>) return {{"gamma0", v.gamma0}, {"gammas", v.gammas}};
        else if constexpr (std::is_same_v<T, scenario::SinrEqual>)
          return {{"gamma0", v.gamma0}, {"n", v.n}, {"gamma", v.gamma}};
        else if constexpr (std::is_same_v<T, scenario::RiceanSnr>)
          return {{"K", v.params.K}, {"phi", v.params.phi}, {"gamma0", v.params.gamma0}};
        else if constexpr (std::is_same_v<T, scenario::RiceanSir>)
          return {{"beta0", v.params.beta0}, {"beta1", v.params.beta1}, {"ex0", v.params.ex0},
                  {"ex1", v.params.ex1},     {"K", v.params.K},         {"phi", v.params.phi}};
        else if constexpr (std::is_same_v<T, scenario::FixedFluidUnequal>)
          return {{"beta0", v.params.beta0}, {"betaf", v.params.betaf}, {"ex0", v.params.ex0},
                  {"sigma2", v.params.sigma2}};
        else if constexpr (std::is_same_v<T, scenario::ArrayCorrelated>) {
          json m = mrc_json(v.params);
          m["delta"] = v.delta;
          return m;
        } else
          return mrc_json(v.params);
      },
      s);
  j["kind"] = scenario_kind(s);
  return j.dump();
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("scenario: object with a string 'kind' required");
  }
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "rayleigh_snr") {
      check_keys(j, {"gamma0"});
      return scenario::RayleighSnr{number(j, "gamma0", 1.0)};
    }
    if (kind == "sir_unequal") {
      check_keys(j, {"lambdas"});
      return scenario::SirUnequal{numbers(j, "lambdas")};
    }
    if (kind == "sir_equal") {
      check_keys(j, {"n", "lambda"});
      return scenario::SirEqual{integer(j, "n", 1), number(j, "lambda", 1.0)};
    }
    if (kind == "sinr_single") {
      check_keys(j, {"gamma0", "gamma1"});
      return scenario::SinrSingle{number(j, "gamma0", 1.0), number(j, "gamma1", 1.0)};
    }
    if (kind == "sinr_unequal") {
      check_keys(j, {"gamma0", "gammas"});
      return scenario::SinrUnequal{number(j, "gamma0", 1.0), numbers(j, "gammas")};
    }
    if (kind == "sinr_equal") {
      check_keys(j, {"gamma0", "n", "gamma"});
      return scenario::SinrEqual{number(j, "gamma0", 1.0), integer(j, "n", 1), number(j, "gamma", 1.0)};
    }
    if (kind == "ricean_snr") {
      check_keys(j, {"K", "phi", "gamma0"});
      return scenario::RiceanSnr{{number(j, "K", 0.0), number(j, "phi", 0.0), number(j, "gamma0", 1.0)}};
    }
    if (kind == "ricean_sir") {
      check_keys(j, {"beta0", "beta1", "ex0", "ex1", "K", "phi"});
      analytic::RiceanSirParams p;
      p.beta0 = number(j, "beta0", 1.0);
      p.beta1 = number(j, "beta1", 1.0);
      p.ex0 = number(j, "ex0", 1.0);
      p.ex1 = number(j, "ex1", 1.0);
      p.K = number(j, "K", 0.0);
      p.phi = number(j, "phi", 0.0);
      return scenario::RiceanSir{p};
    }
    if (kind == "fixed_fluid_unequal") {
      check_keys(j, {"beta0", "betaf", "ex0", "sigma2"});
      return scenario::FixedFluidUnequal{
          {number(j, "beta0", 1.0), number(j, "betaf", 1.0), number(j, "ex0", 1.0), number(j, "sigma2", 1.0)}};
    }
    if (kind == "fixed_fluid_equal") {
      check_keys(j, {"beta", "ex0", "sigma2"});
      return scenario::FixedFluidEqual{mrc_from(j)};
    }
    if (kind == "array_independent") {
      check_keys(j, {"beta", "ex0", "sigma2"});
      return scenario::ArrayIndependent{mrc_from(j)};
    }
    if (kind == "array_correlated") {
      check_keys(j, {"delta", "beta", "ex0", "sigma2"});
      return scenario::ArrayCorrelated{number(j, "delta", 0.25), mrc_from(j)};
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  throw ConfigError("scenario: unknown kind '" + kind + "'");
}

}  // namespace fas
