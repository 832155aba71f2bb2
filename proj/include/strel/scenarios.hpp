#pragma once

// Synthetic case studies: a mobile sensor network and a
// discrete-time SEIR epidemic on a two-layer contact network.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "strel/random.hpp"
#include "strel/signal.hpp"
#include "strel/space.hpp"

namespace strel {

// Sensor network.

/// A bounded random walk: starts uniformly in [start_lo, start_hi], moves by
/// a uniform step in [-step, step] plus `drift` and is clamped to [lo, hi].
struct RandomWalkConfig {
  double start_lo = 0.0;
  double start_hi = 1.0;
  double step = 0.1;
  double drift = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

struct ManetConfig {
  std::size_t node_count = 30;
  std::size_t router_count = 8;  // end devices are the rest, minus the coordinator
  double area = 100.0;           // side of the square the nodes move in
  double radius = 30.0;          // communication range
  double jitter = 2.0;           // per-step displacement bound per coordinate
  std::size_t steps = 20;
  double step_duration = 1.0;
  RandomWalkConfig battery{0.6, 1.0, 0.02, -0.01, 0.0, 1.0};
  RandomWalkConfig humidity{60.0, 110.0, 8.0, 0.0, 20.0, 140.0};
  RandomWalkConfig pollution{90.0, 180.0, 12.0, 0.0, 0.0, 250.0};
  std::uint64_t seed = 1;
};

/// Throws SemanticError naming the offending field.
void validate(const ManetConfig& cfg);

struct ManetScenario {
  /// Delaunay proximity graph with displacement-vector weights.
  DynamicalSpatialModel proximity;
  /// Nodes in communication range, unit weights.
  DynamicalSpatialModel connectivity;
  /// Variables: coord, router, end_dev, target (0/1), battery, humidity,
  /// pollution, x, y.
  Trace trace;
};

ManetScenario generate_manet(const ManetConfig& cfg);

// Epidemic.

/// Lognormal degree distribution given by its mean and 99th percentile,
/// truncated at `cutoff` by rejection.
struct DegreeDistribution {
  double mean = 10.0;
  double p99 = 50.0;
  double cutoff = 200.0;
};

struct LognormalParameters {
  double mu = 0.0;
  double sigma = 1.0;
};

/// The (mu, sigma) matching the mean and 99th percentile, taking the
/// smaller sigma root. Throws SemanticError when none exists.
LognormalParameters lognormal_from_mean_p99(double mean, double p99);

double sample_degree(Random& rng, const DegreeDistribution& d);

/// Gamma-distributed duration in whole days, at least one.
struct DurationDistribution {
  double mean = 3.0;
  double shape = 4.0;
};

int sample_duration(Random& rng, const DurationDistribution& d);

struct EpidemicConfig {
  std::size_t node_count = 500;
  DegreeDistribution static_degree{10.0, 50.0, 200.0};
  DegreeDistribution dynamic_degree{10.0, 100.0, 1000.0};
  /// Per-day probabilities of joining the event network; each node draws one.
  std::vector<double> attendance{1.0 / 30, 1.0 / 14, 1.0 / 7, 2.0 / 7};
  /// Per-edge infection probabilities follow Beta(alpha, alpha (1 - m) / m).
  double infection_mean = 0.05;
  double infection_alpha = 1.0;
  DurationDistribution incubation{3.0, 4.0};  // E -> I
  DurationDistribution infectious{8.0, 4.0};  // I -> R
  std::size_t horizon = 120;                  // days
  std::size_t initial_infected = 5;
  bool use_static = true;   // include the static layer in the transmission network
  bool use_dynamic = true;  // include the event layer in the transmission network
  std::uint64_t seed = 1;
};

void validate(const EpidemicConfig& cfg);

/// Epidemic states, stored as the codes of the trace variable `state`.
enum class Health { S = 0, E = 1, I = 2, R = 3 };

struct EpidemicRun {
  /// Daily union of both layers; weights are -ln p for the daily
  /// transmission probability p of the contact.
  DynamicalSpatialModel contacts;
  /// The static layer alone (one snapshot).
  DynamicalSpatialModel static_layer;
  /// The event layer alone, one snapshot per day.
  DynamicalSpatialModel dynamic_layer;
  /// One variable `state` with codes 0..3 for S, E, I, R; days 0..horizon.
  Trace trace;
  /// Number of nodes per state on each day.
  std::vector<std::array<std::size_t, 4>> census;
};

/// Chung-Lu graph: each pair {i, j} is linked with probability
/// min(1, w_i w_j / sum w). Returns pairs with i < j.
std::vector<std::pair<Location, Location>> expected_degree_graph(Random& rng, const std::vector<double>& weights);

EpidemicRun simulate_epidemic(const EpidemicConfig& cfg);

// Experiments.

struct SweepRow {
  double radius = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// counts[run][k]: locations satisfying the property for radii[k].
  std::vector<std::vector<std::size_t>> counts;
};

/// Runs `runs` simulations (seeds derived from cfg.seed) and counts the
/// locations satisfying safe_radius(r, window) at time 0 for every radius.
SweepResult sweep_safe_radius(const EpidemicConfig& cfg, const std::vector<double>& radii, double window,
                              std::size_t runs);

struct LayerComparison {
  std::vector<std::size_t> static_counts;
  std::vector<std::size_t> dynamic_counts;
};

/// Counts the locations satisfying dangerous_days at time 0, monitored on
/// the static layer and on the event layer of the same simulated runs.
LayerComparison compare_dangerous_days(const EpidemicConfig& cfg, std::size_t runs);

/// Sample mean and standard deviation (n - 1 denominator; 0 for one value).
std::pair<double, double> mean_and_stddev(const std::vector<std::size_t>& xs);

// Configuration files: JSON objects whose keys are the field names above.
// Nested distributions are objects too. Unknown keys and bad values throw
// SemanticError naming the field; malformed JSON throws IoError.

ManetConfig manet_config_from_json(const std::string& text);
EpidemicConfig epidemic_config_from_json(const std::string& text);

}  // namespace strel
