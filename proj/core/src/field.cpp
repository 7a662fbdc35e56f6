// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <type_traits>

#include "fas/error.hpp"
#include "fas/montecarlo.hpp"
#include "layout.hpp"

namespace fas::mc {

namespace detail {

Layout make_layout(const Scenario& scenario) {
  using Kind = SourceSpec::Kind;
  using Role = Channel::Role;
  Layout lay;
  auto add = [&](Kind k, Role r, std::string name, double power) -> SourceSpec& {
    SourceSpec s;
    s.kind = k;
    s.role = r;
    s.name = std::move(name);
    s.power = power;
    lay.sources.push_back(s);
    return lay.sources.back();
  };
  auto add_interferers = [&](const std::vector<double>& powers) {
    for (std::size_t i = 0; i < powers.size(); ++i) {
      add(Kind::Spatial, Role::Interferer, "h" + std::to_string(i + 1), powers[i]);
    }
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, scenario::RayleighSnr>) {
          add(Kind::Spatial, Role::Desired, "h0", v.gamma0);
        } else if constexpr (std::is_same_v<T, scenario::SirUnequal>) {
          add(Kind::Spatial, Role::Desired, "h0", 1.0);
          std::vector<double> p;
          for (double l : v.lambdas) p.push_back(1.0 / l);
          add_interferers(p);
          lay.noise = 0.0;
        } else if constexpr (std::is_same_v<T, scenario::SirEqual>) {
          add(Kind::Spatial, Role::Desired, "h0", 1.0);
          add_interferers(std::vector<double>(static_cast<std::size_t>(v.n), 1.0 / v.lambda));
          lay.noise = 0.0;
        } else if constexpr (std::is_same_v<T, scenario::SinrSingle>) {
          add(Kind::Spatial, Role::Desired, "h0", v.gamma0);
          add_interferers({v.gamma1});
        } else if constexpr (std::is_same_v<T, scenario::SinrUnequal>) {
          add(Kind::Spatial, Role::Desired, "h0", v.gamma0);
          add_interferers(v.gammas);
        } else if constexpr (std::is_same_v<T, scenario::SinrEqual>) {
          add(Kind::Spatial, Role::Desired, "h0", v.gamma0);
          add_interferers(std::vector<double>(static_cast<std::size_t>(v.n), v.gamma));
        } else if constexpr (std::is_same_v<T, scenario::RiceanSnr>) {
          auto& s = add(Kind::Ricean, Role::Desired, "h0", v.params.gamma0);
          s.K = v.params.K;
          s.phi = v.params.phi;
        } else if constexpr (std::is_same_v<T, scenario::RiceanSir>) {
          auto& s = add(Kind::Ricean, Role::Desired, "h0", v.params.beta0);
          s.K = v.params.K;
          s.phi = v.params.phi;
          add(Kind::Spatial, Role::Interferer, "h1", v.params.beta1);
          lay.scale = v.params.ex0 / v.params.ex1;
          lay.noise = 0.0;
        } else if constexpr (std::is_same_v<T, scenario::FixedFluidUnequal>) {
          add(Kind::Spatial, Role::Desired, "h0", v.params.beta0);
          add(Kind::Constant, Role::Desired, "hf", v.params.betaf);
          lay.scale = v.params.ex0 / v.params.sigma2;
          lay.noise = 1.0;
        } else if constexpr (std::is_same_v<T, scenario::FixedFluidEqual>) {
          add(Kind::Spatial, Role::Desired, "h0", v.params.beta);
          add(Kind::Constant, Role::Desired, "hf", v.params.beta);
          lay.scale = v.params.ex0 / v.params.sigma2;
        } else if constexpr (std::is_same_v<T, scenario::ArrayIndependent>) {
          add(Kind::Spatial, Role::Desired, "h1", v.params.beta);
          add(Kind::Spatial, Role::Desired, "h2", v.params.beta);
          lay.scale = v.params.ex0 / v.params.sigma2;
        } else {
          auto& s = add(Kind::CoupledPair, Role::Desired, "h1", v.params.beta);
          s.delta = v.delta;
          lay.scale = v.params.ex0 / v.params.sigma2;
        }
      },
      scenario);
  for (const auto& s : lay.sources) {
    if (!(s.power > 0.0) || !std::isfinite(s.power)) throw ConfigError("scenario: source powers must be positive");
    if (s.kind == SourceSpec::Kind::CoupledPair && !(s.delta > 0.0)) {
      throw ConfigError("scenario: array spacing must be positive");
    }
  }
  return lay;
}

}  // namespace detail

// ---------------------------------------------------------------------------

std::string to_string(Generator g) { return g == Generator::Cholesky ? "cholesky" : "sos"; }

Generator parse_generator(const std::string& name) {
  if (name == "cholesky") return Generator::Cholesky;
  if (name == "sos" || name == "sum_of_sinusoids") return Generator::SumOfSinusoids;
  throw ConfigError("unknown generator '" + name + "' (expected cholesky or sos)");
}

std::size_t SimConfig::grid_points() const {
  return static_cast<std::size_t>(std::floor(track_length / grid_step + 1e-9)) + 1;
}

void SimConfig::validate() const {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) throw ConfigError("grid_step must be positive");
  if (!(track_length >= 0.0) || !std::isfinite(track_length)) throw ConfigError("track_length must be >= 0");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (sos_components < 1) throw ConfigError("sos_components must be >= 1");
  if (grid_points() > 2'000'000) throw ConfigError("grid too fine for the track length");
}

namespace {

using detail::SourceSpec;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFactorTol = 1e-10;  // residual variance at which the factor is truncated
constexpr int kReanchor = 128;

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

// Column-major n x r factor with G G^T ~= covariance.
struct LowRankFactor {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::vector<double> cols;
};

template <class Cov>
LowRankFactor pivoted_cholesky(std::size_t n, const Cov& cov) {
  LowRankFactor f;
  f.n = n;
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = cov(i, i);
  std::vector<double> col(n);
  while (f.rank < n) {
    const auto it = std::max_element(d.begin(), d.end());
    if (*it < kFactorTol) break;
    const std::size_t p = static_cast<std::size_t>(it - d.begin());
    const double piv = std::sqrt(*it);
    for (std::size_t i = 0; i < n; ++i) col[i] = cov(i, p);
    for (std::size_t m = 0; m < f.rank; ++m) {
      const double* g = &f.cols[m * n];
      const double gp = g[p];
      for (std::size_t i = 0; i < n; ++i) col[i] -= g[i] * gp;
    }
    for (std::size_t i = 0; i < n; ++i) {
      col[i] /= piv;
      d[i] -= col[i] * col[i];
      if (d[i] < -1e-8) throw NumericError("pivoted Cholesky: covariance is not positive semi-definite");
    }
    col[p] = piv;
    d[p] = 0.0;
    f.cols.insert(f.cols.end(), col.begin(), col.end());
    ++f.rank;
  }
  return f;
}

// Fills re/im (length f.n) with one CN(0, cov) draw.
void draw_factor(const LowRankFactor& f, std::mt19937_64& eng, double* re, double* im) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  std::fill(re, re + f.n, 0.0);
  std::fill(im, im + f.n, 0.0);
  for (std::size_t k = 0; k < f.rank; ++k) {
    const double zr = nd(eng);
    const double zi = nd(eng);
    const double* g = &f.cols[k * f.n];
#pragma omp simd
    for (std::size_t i = 0; i < f.n; ++i) {
      re[i] += g[i] * zr;
      im[i] += g[i] * zi;
    }
  }
}

// Unit-power sum-of-sinusoids field at (l_i, 0) and, when `re2` is given, at
// (l_i, delta).
void draw_sos(int m_count, std::size_t n, double step, double delta, std::mt19937_64& eng, double* re, double* im,
              double* re2, double* im2) {
  std::uniform_real_distribution<double> ud(0.0, kTwoPi);
  const std::size_t m = static_cast<std::size_t>(m_count);
  std::vector<double> kx(m), ph(m), pr(m), pi(m), wr(m), wi(m), orr(m), oi(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double theta = ud(eng);
    ph[j] = ud(eng);
    kx[j] = kTwoPi * std::cos(theta);
    wr[j] = std::cos(kx[j] * step);
    wi[j] = std::sin(kx[j] * step);
    const double oy = kTwoPi * delta * std::sin(theta);
    orr[j] = std::cos(oy);
    oi[j] = std::sin(oy);
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(m_count));
  for (std::size_t i = 0; i < n; ++i) {
    if (i % kReanchor == 0) {
      const double l = static_cast<double>(i) * step;
      for (std::size_t j = 0; j < m; ++j) {
        pr[j] = std::cos(kx[j] * l + ph[j]);
        pi[j] = std::sin(kx[j] * l + ph[j]);
      }
    }
    double sr = 0.0, si = 0.0, tr = 0.0, ti = 0.0;
    if (re2 != nullptr) {
#pragma omp simd reduction(+ : sr, si, tr, ti)
      for (std::size_t j = 0; j < m; ++j) {
        sr += pr[j];
        si += pi[j];
        tr += pr[j] * orr[j] - pi[j] * oi[j];
        ti += pr[j] * oi[j] + pi[j] * orr[j];
        const double nr = pr[j] * wr[j] - pi[j] * wi[j];
        const double ni = pr[j] * wi[j] + pi[j] * wr[j];
        pr[j] = nr;
        pi[j] = ni;
      }
      re2[i] = amp * tr;
      im2[i] = amp * ti;
    } else {
#pragma omp simd reduction(+ : sr, si)
      for (std::size_t j = 0; j < m; ++j) {
        sr += pr[j];
        si += pi[j];
        const double nr = pr[j] * wr[j] - pi[j] * wi[j];
        const double ni = pr[j] * wi[j] + pi[j] * wr[j];
        pr[j] = nr;
        pi[j] = ni;
      }
    }
    re[i] = amp * sr;
    im[i] = amp * si;
  }
}

}  // namespace

struct FieldGenerator::Impl {
  SimConfig sim;
  std::size_t n = 0;
  std::vector<double> grid;
  detail::Layout layout;
  LowRankFactor single;
  std::vector<LowRankFactor> pairs;  // one per coupled source
};

FieldGenerator::FieldGenerator(const Scenario& scenario, const SimConfig& sim, const CorrelationModel& model)
    : impl_(std::make_unique<Impl>()) {
  sim.validate();
  Impl& m = *impl_;
  m.sim = sim;
  m.n = sim.grid_points();
  m.grid.resize(m.n);
  for (std::size_t i = 0; i < m.n; ++i) m.grid[i] = static_cast<double>(i) * sim.grid_step;
  m.layout = detail::make_layout(scenario);

  if (sim.generator == Generator::SumOfSinusoids) {
    if (model.name != "jakes") throw ConfigError("sum-of-sinusoids generator realizes the Jakes model only");
    return;
  }
  std::vector<double> lag(m.n);
  for (std::size_t k = 0; k < m.n; ++k) lag[k] = model.rho(static_cast<double>(k) * sim.grid_step);
  bool need_single = false;
  for (const auto& s : m.layout.sources) {
    if (s.kind == SourceSpec::Kind::Spatial || s.kind == SourceSpec::Kind::Ricean) need_single = true;
    if (s.kind == SourceSpec::Kind::CoupledPair) {
      std::vector<double> cross(m.n);
      for (std::size_t k = 0; k < m.n; ++k) {
        const double t = static_cast<double>(k) * sim.grid_step;
        cross[k] = model.rho(std::sqrt(s.delta * s.delta + t * t));
      }
      const std::size_t n = m.n;
      m.pairs.push_back(pivoted_cholesky(2 * n, [&](std::size_t i, std::size_t j) {
        const bool ei = i >= n;
        const bool ej = j >= n;
        const std::size_t a = ei ? i - n : i;
        const std::size_t b = ej ? j - n : j;
        const std::size_t k = a > b ? a - b : b - a;
        return ei == ej ? lag[k] : cross[k];
      }));
    }
  }
  if (need_single) {
    m.single = pivoted_cholesky(m.n, [&](std::size_t i, std::size_t j) { return lag[i > j ? i - j : j - i]; });
  }
}

FieldGenerator::~FieldGenerator() = default;

std::size_t FieldGenerator::grid_points() const { return impl_->n; }

int FieldGenerator::factor_rank() const {
  std::size_t r = impl_->single.rank;
  for (const auto& p : impl_->pairs) r = std::max(r, p.rank);
  return static_cast<int>(r);
}

FieldRealization FieldGenerator::generate(std::uint64_t trial_index) const {
  FieldRealization f;
  generate_into(trial_index, f);
  return f;
}

void FieldGenerator::generate_into(std::uint64_t trial_index, FieldRealization& out) const {
  const Impl& m = *impl_;
  const std::size_t n = m.n;
  auto eng = trial_engine(m.sim.seed, trial_index);
  std::size_t n_channels = 0;
  for (const auto& s : m.layout.sources) n_channels += s.kind == SourceSpec::Kind::CoupledPair ? 2 : 1;
  out.grid = m.grid;
  out.channels.resize(n_channels);
  thread_local std::vector<double> re, im, re2, im2;
  re.resize(2 * n);
  im.resize(2 * n);
  re2.resize(n);
  im2.resize(n);
  const bool sos = m.sim.generator == Generator::SumOfSinusoids;

  std::size_t ch = 0;
  std::size_t pair_index = 0;
  for (const auto& s : m.layout.sources) {
    Channel& c = out.channels[ch++];
    c.role = s.role;
    c.name = s.name;
    c.h.resize(n);
    const double a = std::sqrt(s.power);
    switch (s.kind) {
      case SourceSpec::Kind::Constant: {
        std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
        const double zr = nd(eng);
        const double zi = nd(eng);
        std::fill(c.h.begin(), c.h.end(), std::complex<double>(a * zr, a * zi));
        break;
      }
      case SourceSpec::Kind::Spatial:
      case SourceSpec::Kind::Ricean: {
        if (sos) {
          draw_sos(m.sim.sos_components, n, m.sim.grid_step, 0.0, eng, re.data(), im.data(), nullptr, nullptr);
        } else {
          draw_factor(m.single, eng, re.data(), im.data());
        }
        if (s.kind == SourceSpec::Kind::Spatial) {
          for (std::size_t i = 0; i < n; ++i) c.h[i] = {a * re[i], a * im[i]};
        } else {
          const double zeta = std::sqrt(s.K / (s.K + 1.0));
          const double diffuse = 1.0 / std::sqrt(s.K + 1.0);
          for (std::size_t i = 0; i < n; ++i) {
            const double ang = -s.phi * m.grid[i];
            c.h[i] = {a * (zeta * std::cos(ang) + diffuse * re[i]), a * (zeta * std::sin(ang) + diffuse * im[i])};
          }
        }
        break;
      }
      case SourceSpec::Kind::CoupledPair: {
        Channel& c2 = out.channels[ch++];
        c2.role = s.role;
        c2.name = "h2";
        c2.h.resize(n);
        if (sos) {
          draw_sos(m.sim.sos_components, n, m.sim.grid_step, s.delta, eng, re.data(), im.data(), re2.data(), im2.data());
        } else {
          const LowRankFactor& f = m.pairs[pair_index++];
          draw_factor(f, eng, re.data(), im.data());
          std::copy(re.begin() + static_cast<std::ptrdiff_t>(n), re.begin() + static_cast<std::ptrdiff_t>(2 * n),
                    re2.begin());
          std::copy(im.begin() + static_cast<std::ptrdiff_t>(n), im.begin() + static_cast<std::ptrdiff_t>(2 * n),
                    im2.begin());
        }
        for (std::size_t i = 0; i < n; ++i) {
          c.h[i] = {a * re[i], a * im[i]};
          c2.h[i] = {a * re2[i], a * im2[i]};
        }
        break;
      }
    }
  }
}

FieldRealization generate_field(const Scenario& scenario, const SimConfig& sim, std::uint64_t trial_index) {
  return FieldGenerator(scenario, sim).generate(trial_index);
}

void detail::metric(const FieldRealization& field, const Layout& lay, std::vector<double>& out) {
  const std::size_t n = field.grid.size();
  out.assign(n, 0.0);
  thread_local std::vector<double> denom;
  denom.assign(n, lay.noise);
  for (const auto& c : field.channels) {
    if (c.h.size() != n) throw DomainError("metric_along_track: channel length does not match the grid");
    double* dst = c.role == Channel::Role::Desired ? out.data() : denom.data();
    for (std::size_t i = 0; i < n; ++i) dst[i] += std::norm(c.h[i]);
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = lay.scale * out[i] / denom[i];
}

void metric_along_track(const FieldRealization& field, const Scenario& scenario, std::vector<double>& out) {
  detail::metric(field, detail::make_layout(scenario), out);
}

std::vector<double> metric_along_track(const FieldRealization& field, const Scenario& scenario) {
  std::vector<double> s;
  metric_along_track(field, scenario, s);
  return s;
}

}  // namespace fas::mc
