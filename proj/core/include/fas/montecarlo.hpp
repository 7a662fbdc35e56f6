// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo oracle: spatially correlated channel fields on a grid along the
// track, the metric S(l) they induce, and empirical estimates of the
// supremum cdf, crossing rate and average fade distance.
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fas/correlation.hpp"
#include "fas/curve.hpp"
#include "fas/scenario.hpp"

namespace fas::mc {

enum class Generator { Cholesky, SumOfSinusoids };

std::string to_string(Generator g);
Generator parse_generator(const std::string& name);  // "cholesky" | "sos" | "sum_of_sinusoids"

struct SimConfig {
  double grid_step = 1e-3;  // wavelengths
  double track_length = 1.0;
  long trials = 10000;
  std::uint64_t seed = 1;
  Generator generator = Generator::Cholesky;
  int sos_components = 256;

  std::size_t grid_points() const;  // floor(L / tau) + 1
  void validate() const;            // throws ConfigError
};

struct Channel {
  enum class Role { Desired, Interferer };
  Role role = Role::Desired;
  std::string name;
  std::vector<std::complex<double>> h;  // one value per grid point
};

struct FieldRealization {
  std::vector<double> grid;
  std::vector<Channel> channels;
};

// Holds the per-configuration state (covariance factors) and draws
// realizations. Trial t always uses an engine seeded from (seed, t), so the
// output does not depend on call order or threading.
class FieldGenerator {
 public:
  FieldGenerator(const Scenario& scenario, const SimConfig& sim, const CorrelationModel& model = jakes_model());
  ~FieldGenerator();
  FieldGenerator(const FieldGenerator&) = delete;
  FieldGenerator& operator=(const FieldGenerator&) = delete;

  FieldRealization generate(std::uint64_t trial_index) const;
  void generate_into(std::uint64_t trial_index, FieldRealization& out) const;

  std::size_t grid_points() const;
  // Rank kept by the pivoted Cholesky factor (largest over sources), 0 for
  // sum-of-sinusoids.
  int factor_rank() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

FieldRealization generate_field(const Scenario& scenario, const SimConfig& sim, std::uint64_t trial_index);

std::vector<double> metric_along_track(const FieldRealization& field, const Scenario& scenario);
void metric_along_track(const FieldRealization& field, const Scenario& scenario, std::vector<double>& out);

// sqrt(p (1 - p) / n)
double binomial_se(double p, long n);

struct SimOptions {
  std::vector<double> lengths;  // prefix track lengths for sup cdfs; empty means {track_length}
  std::vector<int> ports;       // discrete-port counts (>= 2)
  unsigned threads = 0;         // 0: hardware concurrency
};

// Everything one pass over the trials yields, per threshold.
struct SimulationSummary {
  std::vector<double> thresholds;
  long trials = 0;
  double grid_step = 0.0;
  double track_span = 0.0;  // (grid_points - 1) * grid_step
  std::vector<double> lengths;
  std::vector<int> ports;
  std::string metadata_json;

  // Histogram counts: entry j holds trials whose value falls in
  // (t[j-1], t[j]]; the cdf at t[j] is the running sum.
  std::vector<long> marginal_count;              // S(0)
  std::vector<std::vector<long>> sup_count;      // [length][threshold]
  std::vector<std::vector<long>> port_count;     // [port set][threshold]
  std::vector<double> up_sum;                    // upcrossings over all trials
  std::vector<double> up_sumsq;                  // sum over trials of count^2
  std::vector<double> down_sum;
  std::vector<double> below_sum;                 // below-threshold distance
  std::vector<double> below_started_sum;         // same, trials with S(0) <= t

  CdfCurve marginal_curve() const;
  CdfCurve sup_curve(std::size_t length_index) const;
  CdfCurve port_curve(std::size_t port_index) const;
  CdfCurve lcr_curve() const;  // upcrossings per wavelength
  CdfCurve afd_curve() const;  // below distance per downcrossing
};

SimulationSummary simulate(const Scenario& scenario, const SimConfig& sim, const std::vector<double>& thresholds,
                           const SimOptions& options = {});

CdfCurve empirical_sup_cdf(const Scenario& scenario, const SimConfig& sim, const std::vector<double>& thresholds);
CdfCurve empirical_lcr(const Scenario& scenario, const SimConfig& sim, const std::vector<double>& thresholds);
CdfCurve empirical_afd(const Scenario& scenario, const SimConfig& sim, const std::vector<double>& thresholds);
CdfCurve discrete_port_sup(const Scenario& scenario, const SimConfig& sim, int n_ports,
                           const std::vector<double>& thresholds);

// Crossing-rate and fade-distance estimators for one metric sequence; exposed
// so hand-built sequences can be checked exactly.
long count_upcrossings(const std::vector<double>& s, double threshold);
double below_distance(const std::vector<double>& s, double grid_step, double threshold);

// Per-trial distance to the first grid point where S(l) >= s_th (infinity if
// the track never reaches it).
std::vector<double> first_passage_distances(const Scenario& scenario, const SimConfig& sim, double s_th,
                                            unsigned threads = 0);

// Largest single-interferer INR gamma1 for which P(sup SINR < s_th) <= p_T on
// the configured track, from the per-trial critical INR
// max_l (gamma0 |u0|^2 - s_th) / (s_th |u1|^2).
double neutralizable_inr(double gamma0, double s_th, double p_T, const SimConfig& sim, unsigned threads = 0);

}  // namespace fas::mc
