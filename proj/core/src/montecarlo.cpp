// SPDX-License-Identifier: Apache-2.0
#include "fas/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "fas/error.hpp"
#include "layout.hpp"

namespace fas::mc {
namespace {

constexpr long kChunk = 1024;

// Index of the first threshold >= v, walked from the previous index; the
// metric moves little between grid points so this is O(1) on average.
inline std::size_t walk(const std::vector<double>& t, std::size_t j, double v) {
  const std::size_t n = t.size();
  while (j < n && t[j] < v) ++j;
  while (j > 0 && t[j - 1] >= v) --j;
  return j;
}

struct Accumulator {
  std::vector<long> marginal;
  std::vector<std::vector<long>> sup;
  std::vector<std::vector<long>> port;
  std::vector<double> up_sum, up_sumsq, down_sum, below_sum, below_started;

  Accumulator(std::size_t nt, std::size_t nl, std::size_t np)
      : marginal(nt + 1, 0),
        sup(nl, std::vector<long>(nt + 1, 0)),
        port(np, std::vector<long>(nt + 1, 0)),
        up_sum(nt, 0.0),
        up_sumsq(nt, 0.0),
        down_sum(nt, 0.0),
        below_sum(nt, 0.0),
        below_started(nt, 0.0) {}

  void merge(const Accumulator& o) {
    for (std::size_t j = 0; j < marginal.size(); ++j) marginal[j] += o.marginal[j];
    for (std::size_t q = 0; q < sup.size(); ++q)
      for (std::size_t j = 0; j < sup[q].size(); ++j) sup[q][j] += o.sup[q][j];
    for (std::size_t q = 0; q < port.size(); ++q)
      for (std::size_t j = 0; j < port[q].size(); ++j) port[q][j] += o.port[q][j];
    for (std::size_t j = 0; j < up_sum.size(); ++j) {
      up_sum[j] += o.up_sum[j];
      up_sumsq[j] += o.up_sumsq[j];
      down_sum[j] += o.down_sum[j];
      below_sum[j] += o.below_sum[j];
      below_started[j] += o.below_started[j];
    }
  }
};

// Per-trial scratch: difference arrays over the threshold index.
struct TrialScratch {
  std::vector<long> up, down;
  std::vector<double> a, b;
  explicit TrialScratch(std::size_t nt) : up(nt + 1), down(nt + 1), a(nt + 1), b(nt + 1) {}
};

struct Plan {
  const std::vector<double>* t = nullptr;
  double step = 0.0;
  std::vector<std::size_t> prefix_points;  // grid points covered by each length
  std::vector<std::vector<std::size_t>> port_index;
};

void process_trial(const std::vector<double>& s, const Plan& plan, Accumulator& acc, TrialScratch& w) {
  const std::vector<double>& t = *plan.t;
  const std::size_t nt = t.size();
  const std::size_t n = s.size();
  const double step = plan.step;

  const std::size_t i0 = walk(t, 0, s[0]);
  acc.marginal[i0] += 1;

  double run_max = s[0];
  std::size_t next_len = 0;  // prefix_points is sorted ascending

  std::fill(w.up.begin(), w.up.end(), 0);
  std::fill(w.down.begin(), w.down.end(), 0);
  std::fill(w.a.begin(), w.a.end(), 0.0);
  std::fill(w.b.begin(), w.b.end(), 0.0);

  auto record_prefix = [&](std::size_t points_seen) {
    while (next_len < plan.prefix_points.size() && plan.prefix_points[next_len] == points_seen) {
      acc.sup[next_len][walk(t, 0, run_max)] += 1;
      ++next_len;
    }
  };
  record_prefix(1);

  std::size_t ip = i0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double lo_v = s[k];
    const double hi_v = s[k + 1];
    const std::size_t in = walk(t, ip, hi_v);
    if (in > ip) {
      w.up[ip] += 1;
      w.up[in] -= 1;
    } else if (in < ip) {
      w.down[in] += 1;
      w.down[ip] -= 1;
    }
    const std::size_t lo = std::min(ip, in);
    const std::size_t hi = std::max(ip, in);
    if (hi > lo) {
      const double m = std::min(lo_v, hi_v);
      const double span = std::abs(hi_v - lo_v);
      const double alpha = step / span;
      const double beta = -step * m / span;
      w.a[lo] += alpha;
      w.a[hi] -= alpha;
      w.b[lo] += beta;
      w.b[hi] -= beta;
    }
    w.b[hi] += step;
    ip = in;
    run_max = std::max(run_max, hi_v);
    record_prefix(k + 2);
  }

  for (std::size_t q = 0; q < plan.port_index.size(); ++q) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t idx : plan.port_index[q]) m = std::max(m, s[idx]);
    acc.port[q][walk(t, 0, m)] += 1;
  }

  long up = 0, down = 0;
  double a = 0.0, b = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    up += w.up[j];
    down += w.down[j];
    a += w.a[j];
    b += w.b[j];
    const double below = a * t[j] + b;
    acc.up_sum[j] += static_cast<double>(up);
    acc.up_sumsq[j] += static_cast<double>(up) * static_cast<double>(up);
    acc.down_sum[j] += static_cast<double>(down);
    acc.below_sum[j] += below;
    if (j >= i0) acc.below_started[j] += below;
  }
}

// Runs `body(trial, metric)` over all trials on a thread pool, giving each
// 1024-trial chunk its own state and handing the states back in chunk order.
template <class State, class MakeState, class Body>
std::vector<State> run_chunks(const Scenario& scenario, const SimConfig& sim, unsigned threads, MakeState make_state,
                              Body body) {
  const FieldGenerator gen(scenario, sim);
  const detail::Layout layout = detail::make_layout(scenario);
  const long n_chunks = (sim.trials + kChunk - 1) / kChunk;
  std::vector<State> states;
  states.reserve(static_cast<std::size_t>(n_chunks));
  for (long c = 0; c < n_chunks; ++c) states.push_back(make_state());
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<long>(workers, n_chunks));
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    try {
      FieldRealization field;
      std::vector<double> metric;
      for (long c = next++; c < n_chunks && !failed; c = next++) {
        const long first = c * kChunk;
        const long last = std::min(sim.trials, first + kChunk);
        for (long trial = first; trial < last; ++trial) {
          gen.generate_into(static_cast<std::uint64_t>(trial), field);
          detail::metric(field, layout, metric);
          body(states[static_cast<std::size_t>(c)], trial, metric, field);
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return states;
}

CdfCurve probability_curve(const std::string& label, const std::vector<double>& t, const std::vector<long>& diff,
                           long trials, const std::string& meta) {
  CdfCurve c;
  c.label = label;
  c.metadata_json = meta;
  long cum = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    cum += diff[j];
    const double p = static_cast<double>(cum) / static_cast<double>(trials);
    const double half = 1.96 * binomial_se(p, trials);
    c.points.push_back({t[j], p, std::max(0.0, p - half), std::min(1.0, p + half)});
  }
  return c;
}

std::string with_field(const std::string& meta, const std::string& key, const nlohmann::json& value) {
  auto j = nlohmann::json::parse(meta);
  j[key] = value;
  return j.dump();
}

}  // namespace

double binomial_se(double p, long n) {
  if (n <= 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

SimulationSummary simulate(const Scenario& scenario, const SimConfig& sim, const std::vector<double>& thresholds,
                           const SimOptions& options) {
  sim.validate();
  if (thresholds.empty()) throw ConfigError("simulate: empty threshold grid");
  for (std::size_t j = 1; j < thresholds.size(); ++j) {
    if (!(thresholds[j] > thresholds[j - 1])) throw ConfigError("simulate: thresholds must be strictly increasing");
  }
  const std::size_t n = sim.grid_points();
  SimulationSummary out;
  out.thresholds = thresholds;
  out.trials = sim.trials;
  out.grid_step = sim.grid_step;
  out.track_span = static_cast<double>(n - 1) * sim.grid_step;
  out.lengths = options.lengths.empty() ? std::vector<double>{sim.track_length} : options.lengths;
  std::sort(out.lengths.begin(), out.lengths.end());
  out.ports = options.ports;

  Plan plan;
  plan.t = &out.thresholds;
  plan.step = sim.grid_step;
  for (double L : out.lengths) {
    if (!(L >= 0.0) || L > sim.track_length + 1e-12) throw ConfigError("simulate: lengths must lie in [0, track_length]");
    plan.prefix_points.push_back(std::min(n, static_cast<std::size_t>(std::floor(L / sim.grid_step + 1e-9)) + 1));
  }
  for (int np : out.ports) {
    if (np < 2) throw ConfigError("simulate: port counts must be >= 2");
    std::vector<std::size_t> idx;
    for (int k = 0; k < np; ++k) {
      idx.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(k) * static_cast<double>(n - 1) / (np - 1))));
    }
    plan.port_index.push_back(std::move(idx));
  }

  const std::size_t nt = thresholds.size();
  struct State {
    Accumulator acc;
    TrialScratch scratch;
  };
  int rank = 0;
  {
    // Rank for metadata only; FieldGenerator is rebuilt inside run_chunks.
    if (sim.generator == Generator::Cholesky) rank = FieldGenerator(scenario, sim).factor_rank();
  }
  auto states = run_chunks<State>(
      scenario, sim, options.threads,
      [&] { return State{Accumulator(nt, plan.prefix_points.size(), plan.port_index.size()), TrialScratch(nt)}; },
      [&](State& st, long, const std::vector<double>& s, const FieldRealization&) {
        process_trial(s, plan, st.acc, st.scratch);
      });
  Accumulator total(nt, plan.prefix_points.size(), plan.port_index.size());
  for (const auto& st : states) total.merge(st.acc);

  out.marginal_count = total.marginal;
  out.sup_count = total.sup;
  out.port_count = total.port;
  out.up_sum = total.up_sum;
  out.up_sumsq = total.up_sumsq;
  out.down_sum = total.down_sum;
  out.below_sum = total.below_sum;
  out.below_started_sum = total.below_started;

  nlohmann::json meta;
  meta["source"] = "monte_carlo";
  meta["scenario"] = nlohmann::json::parse(scenario_to_json(scenario));
  meta["generator"] = to_string(sim.generator);
  meta["seed"] = sim.seed;
  meta["trials"] = sim.trials;
  meta["grid_step"] = sim.grid_step;
  meta["track_length"] = sim.track_length;
  if (sim.generator == Generator::SumOfSinusoids) {
    meta["sos_components"] = sim.sos_components;
  } else {
    meta["factor_rank"] = rank;
    meta["factor_tolerance"] = 1e-10;
  }
  meta["ci"] = "normal approximation, 1.96 standard errors";
  out.metadata_json = meta.dump();
  return out;
}

CdfCurve SimulationSummary::marginal_curve() const {
  return probability_curve("empirical_marginal", thresholds, marginal_count, trials,
                           with_field(with_field(metadata_json, "curve", "marginal"), "L", 0.0));
}

CdfCurve SimulationSummary::sup_curve(std::size_t q) const {
  return probability_curve("empirical_sup", thresholds, sup_count.at(q), trials,
                           with_field(with_field(metadata_json, "curve", "sup"), "L", lengths.at(q)));
}

CdfCurve SimulationSummary::port_curve(std::size_t q) const {
  return probability_curve("empirical_ports_" + std::to_string(ports.at(q)), thresholds, port_count.at(q), trials,
                           with_field(with_field(metadata_json, "curve", "ports"), "ports", ports.at(q)));
}

CdfCurve SimulationSummary::lcr_curve() const {
  CdfCurve c;
  c.label = "empirical_lcr";
  c.metadata_json = with_field(metadata_json, "curve", "lcr");
  const double nt = static_cast<double>(trials);
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    const double mean = up_sum[j] / nt;
    const double var = trials > 1 ? std::max(0.0, (up_sumsq[j] - nt * mean * mean) / (nt - 1.0)) : 0.0;
    const double rate = track_span > 0.0 ? mean / track_span : 0.0;
    const double se = track_span > 0.0 ? std::sqrt(var / nt) / track_span : 0.0;
    c.points.push_back({thresholds[j], rate, std::max(0.0, rate - 1.96 * se), rate + 1.96 * se});
  }
  return c;
}

CdfCurve SimulationSummary::afd_curve() const {
  CdfCurve c;
  c.label = "empirical_afd";
  c.metadata_json = with_field(metadata_json, "curve", "afd");
  long started = 0;
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    started += marginal_count[j];
    double v = 0.0;
    if (down_sum[j] > 0.0) {
      v = below_sum[j] / down_sum[j];
    } else if (started > 0) {
      v = below_started_sum[j] / static_cast<double>(started);
    }
    c.points.push_back({thresholds[j], v, std::nullopt, std::nullopt});
  }
  return c;
}

CdfCurve empirical_sup_cdf(const Scenario& scenario, const SimConfig& sim, const std::vector<double>& thresholds) {
  return simulate(scenario, sim, thresholds).sup_curve(0);
}

CdfCurve empirical_lcr(const Scenario& scenario, const SimConfig& sim, const std::vector<double>& thresholds) {
  return simulate(scenario, sim, thresholds).lcr_curve();
}

CdfCurve empirical_afd(const Scenario& scenario, const SimConfig& sim, const std::vector<double>& thresholds) {
  return simulate(scenario, sim, thresholds).afd_curve();
}

CdfCurve discrete_port_sup(const Scenario& scenario, const SimConfig& sim, int n_ports,
                           const std::vector<double>& thresholds) {
  SimOptions o;
  o.ports = {n_ports};
  return simulate(scenario, sim, thresholds, o).port_curve(0);
}

long count_upcrossings(const std::vector<double>& s, double threshold) {
  long c = 0;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (s[k] <= threshold && threshold < s[k + 1]) ++c;
  }
  return c;
}

double below_distance(const std::vector<double>& s, double grid_step, double threshold) {
  double d = 0.0;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const double m = std::min(s[k], s[k + 1]);
    const double M = std::max(s[k], s[k + 1]);
    if (threshold >= M) {
      d += grid_step;
    } else if (threshold > m) {
      d += grid_step * (threshold - m) / (M - m);
    }
  }
  return d;
}

std::vector<double> first_passage_distances(const Scenario& scenario, const SimConfig& sim, double s_th,
                                            unsigned threads) {
  sim.validate();
  using State = std::vector<double>;
  const double inf = std::numeric_limits<double>::infinity();
  auto states = run_chunks<State>(
      scenario, sim, threads, [] { return State{}; },
      [&](State& st, long, const std::vector<double>& s, const FieldRealization&) {
        double d = inf;
        for (std::size_t k = 0; k < s.size(); ++k) {
          if (s[k] >= s_th) {
            d = static_cast<double>(k) * sim.grid_step;
            break;
          }
        }
        st.push_back(d);
      });
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(sim.trials));
  for (const auto& st : states) out.insert(out.end(), st.begin(), st.end());
  return out;
}

double neutralizable_inr(double gamma0, double s_th, double p_T, const SimConfig& sim, unsigned threads) {
  if (!(gamma0 > 0.0) || !(s_th > 0.0)) throw DomainError("neutralizable_inr: gamma0 and s_th must be positive");
  if (!(p_T > 0.0 && p_T < 1.0)) throw DomainError("neutralizable_inr: p_T must lie in (0, 1)");
  sim.validate();
  // Unit-power desired and interferer fields.
  const Scenario unit = scenario::SinrSingle{1.0, 1.0};
  using State = std::vector<double>;
  auto states = run_chunks<State>(
      unit, sim, threads, [] { return State{}; },
      [&](State& st, long, const std::vector<double>&, const FieldRealization& f) {
        const auto& u0 = f.channels[0].h;
        const auto& u1 = f.channels[1].h;
        double crit = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < u0.size(); ++k) {
          crit = std::max(crit, (gamma0 * std::norm(u0[k]) - s_th) / (s_th * std::norm(u1[k])));
        }
        st.push_back(crit);
      });
  std::vector<double> crit;
  for (const auto& st : states) crit.insert(crit.end(), st.begin(), st.end());
  std::sort(crit.begin(), crit.end());
  // Largest gamma1 with #{crit < gamma1} <= p_T * n.
  const auto k = static_cast<std::size_t>(std::floor(p_T * static_cast<double>(crit.size())));
  const double g1 = crit[std::min(k, crit.size() - 1)];
  if (!(g1 > 0.0)) {
    throw InfeasibleTargetError("neutralizable_inr: target outage not reachable even without interference");
  }
  return g1;
}

}  // namespace fas::mc
