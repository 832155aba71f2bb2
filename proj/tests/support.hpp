#pragma once

// Random instance generators and signal comparison helpers shared by the
// unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "strel/distance.hpp"
#include "strel/interpretation.hpp"
#include "strel/logic.hpp"
#include "strel/monitor.hpp"
#include "strel/signal.hpp"
#include "strel/space.hpp"

namespace strel::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(xs.size()) - 1))];
}

struct ModelOptions {
  int min_locations = 1;
  int max_locations = 8;
  int max_edges = 10;
  std::vector<double> weights{1.0, 2.0, 0.5, 1.5};
  bool symmetric = false;
};

inline SpatialModel random_model(Rng& rng, std::size_t n, const ModelOptions& opt) {
  std::vector<std::pair<Location, Location>> pairs;
  for (Location a = 0; a < n; ++a)
    for (Location b = 0; b < n; ++b)
      if (a != b && (!opt.symmetric || a < b)) pairs.emplace_back(a, b);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  int budget = uniform_int(rng, 0, opt.max_edges);
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) {
    if (static_cast<int>(edges.size()) + (opt.symmetric ? 2 : 1) > budget) break;
    double w = pick(rng, opt.weights);
    edges.push_back({a, b, w});
    if (opt.symmetric) edges.push_back({b, a, w});
  }
  return SpatialModel(n, std::move(edges));
}

struct TraceOptions {
  int max_steps = 6;
  int max_gap = 2;
  int max_tail = 3;
  int min_horizon = 4;
};

/// Variables p, q (0/1) and x (multiples of 0.5 in [-2, 2]); integer step
/// times starting at 0.
inline Trace random_trace(Rng& rng, std::size_t n, const TraceOptions& opt) {
  int steps = uniform_int(rng, 1, opt.max_steps);
  std::vector<double> times{0.0};
  while (static_cast<int>(times.size()) < steps) times.push_back(times.back() + uniform_int(rng, 1, opt.max_gap));
  double horizon = std::max<double>(times.back() + uniform_int(rng, 0, opt.max_tail), opt.min_horizon);
  std::vector<TemporalSignal<Trace::Sample>> per;
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<TemporalSignal<Trace::Sample>::Step> st;
    for (double t : times)
      st.push_back({t, {double(uniform_int(rng, 0, 1)), double(uniform_int(rng, 0, 1)),
                        0.5 * uniform_int(rng, -4, 4)}});
    per.emplace_back(std::move(st), horizon);
  }
  return Trace({"p", "q", "x"}, std::move(per));
}

/// Up to two snapshots; the second starts at an integer time inside the trace.
inline DynamicalSpatialModel random_dynamic_model(Rng& rng, std::size_t n, double horizon,
                                                  const ModelOptions& opt) {
  std::vector<DynamicalSpatialModel::Snapshot> snaps;
  snaps.push_back({0.0, random_model(rng, n, opt)});
  if (horizon >= 1 && coin(rng, 0.4))
    snaps.push_back({double(uniform_int(rng, 1, static_cast<int>(horizon))), random_model(rng, n, opt)});
  return DynamicalSpatialModel(std::move(snaps));
}

inline DistanceRegistry test_registry() {
  DistanceRegistry r = DistanceRegistry::with_builtins();
  r.add("w", weight_distance());
  return r;
}

struct FormulaOptions {
  int max_depth = 4;
  bool derived = true;
  bool temporal = true;
  bool spatial = true;
  // Until/since with an unbounded interval; the parser cannot produce them.
  bool unbounded_until = true;
  std::vector<std::string> distances{"hop", "w"};
};

inline Interval random_temporal_interval(Rng& rng) {
  int lo = uniform_int(rng, 0, 1);
  return Interval::bounded(lo, lo + uniform_int(rng, 0, 2));
}

inline Interval random_spatial_interval(Rng& rng) {
  double lo = pick(rng, std::vector<double>{0, 0, 0.5, 1, 2});
  if (coin(rng, 0.3)) return Interval::from(lo);
  return Interval::bounded(lo, lo + pick(rng, std::vector<double>{0, 0.5, 1, 2, 3}));
}

inline Formula random_atom(Rng& rng, std::size_t n) {
  switch (uniform_int(rng, 0, 6)) {
    case 0: return Formula::atomic("p");
    case 1: return Formula::atomic("q");
    case 2: return Formula::compare("x", Comparison::greater, 0.5 * uniform_int(rng, -3, 3));
    case 3: return Formula::compare("x", Comparison::less_equal, 0.5 * uniform_int(rng, -3, 3));
    case 4: return Formula::compare("x", Comparison::greater_equal, 0.5 * uniform_int(rng, -3, 3));
    case 5: return Formula::atomic("at_" + std::to_string(uniform_int(rng, 0, static_cast<int>(n) - 1)));
    default: return coin(rng, 0.5) ? Formula::top() : Formula::compare("x", Comparison::less, 0.0);
  }
}

inline Formula random_formula(Rng& rng, std::size_t n, int depth, const FormulaOptions& opt) {
  if (depth <= 1) return random_atom(rng, n);
  std::vector<int> ops{0, 1, 2};
  if (opt.derived) ops.push_back(3);
  if (opt.temporal) {
    ops.insert(ops.end(), {4, 5});
    if (opt.derived) ops.insert(ops.end(), {6, 7});
  }
  if (opt.spatial) {
    ops.insert(ops.end(), {8, 8, 9, 9});
    if (opt.derived) ops.insert(ops.end(), {10, 11, 12});
  }
  auto sub = [&] { return random_formula(rng, n, uniform_int(rng, 1, depth - 1), opt); };
  const std::string& d = pick(rng, opt.distances);
  switch (pick(rng, ops)) {
    case 0: return random_atom(rng, n);
    case 1: return !sub();
    case 2: return sub() && sub();
    case 3: return sub() || sub();
    case 4: return until(opt.unbounded_until && coin(rng, 0.2) ? Interval::from(uniform_int(rng, 0, 1)) : random_temporal_interval(rng), sub(), sub());
    case 5: return since(opt.unbounded_until && coin(rng, 0.2) ? Interval::from(uniform_int(rng, 0, 1)) : random_temporal_interval(rng), sub(), sub());
    case 6: return eventually(coin(rng, 0.3) ? Interval::all() : random_temporal_interval(rng), sub());
    case 7: return globally(coin(rng, 0.3) ? Interval::all() : random_temporal_interval(rng), sub());
    case 8: return reach(random_spatial_interval(rng), d, sub(), sub());
    case 9: return escape(random_spatial_interval(rng), d, sub());
    case 10: return somewhere(random_spatial_interval(rng), d, sub());
    case 11: return everywhere(random_spatial_interval(rng), d, sub());
    default: return surround(Interval::bounded(0, pick(rng, std::vector<double>{0, 1, 2, 3})), d, sub(), sub());
  }
}

inline AtomicInterpretation test_interpretation() { return AtomicInterpretation({"p", "q", "x"}); }

/// A self-contained monitoring problem; the context refers into it.
struct Instance {
  DynamicalSpatialModel model;
  Trace trace;
  AtomicInterpretation interpretation = test_interpretation();
  DistanceRegistry distances = test_registry();

  MonitorContext context() const { return {model, trace, interpretation, distances}; }
};

inline Instance random_instance(Rng& rng, const ModelOptions& mopt = {}, const TraceOptions& topt = {}) {
  auto n = static_cast<std::size_t>(uniform_int(rng, mopt.min_locations, mopt.max_locations));
  Instance inst;
  inst.trace = random_trace(rng, n, topt);
  inst.model = random_dynamic_model(rng, n, inst.trace.end_time(), mopt);
  return inst;
}

template <class V>
std::vector<V> random_spatial_signal(Rng& rng, std::size_t n);

template <>
inline std::vector<bool> random_spatial_signal<bool>(Rng& rng, std::size_t n) {
  std::vector<bool> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = coin(rng);
  return s;
}

template <>
inline std::vector<double> random_spatial_signal<double>(Rng& rng, std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    int k = uniform_int(rng, -6, 6);
    s[i] = k == 6 ? INFINITY : k == -6 ? -INFINITY : 0.5 * k;
  }
  return s;
}

inline bool close(bool a, bool b, double) { return a == b; }
inline bool close(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol;
}
inline bool close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!close(a[i], b[i], tol)) return false;
  return true;
}

template <class V>
bool same_spatial(const std::vector<V>& a, const std::vector<V>& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!close(V(a[i]), V(b[i]), tol)) return false;
  return true;
}

/// Same domain, and equal values at every step time of either signal and at
/// the midpoints between them.
template <class V>
bool same_signal(const TemporalSignal<V>& a, const TemporalSignal<V>& b, double tol = 1e-9) {
  if (std::abs(a.start_time() - b.start_time()) > 1e-12 || std::abs(a.end_time() - b.end_time()) > 1e-12)
    return false;
  std::vector<double> ts = a.times();
  for (double t : b.times()) ts.push_back(t);
  ts.push_back(a.end_time());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<double> probes = ts;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) probes.push_back((ts[i] + ts[i + 1]) / 2);
  for (double t : probes) {
    if (t < a.start_time() || t > a.end_time()) continue;
    if (!close(a.value_at(t), b.value_at(t), tol)) return false;
  }
  return true;
}

template <class V>
bool same_signal(const SpatioTemporalSignal<V>& a, const SpatioTemporalSignal<V>& b, double tol = 1e-9) {
  if (a.location_count() != b.location_count()) return false;
  for (std::size_t l = 0; l < a.location_count(); ++l)
    if (!same_signal(a[l], b[l], tol)) return false;
  return true;
}

/// A temporal signal with up to `max_steps` integer step times on [0, horizon].
template <class V>
TemporalSignal<V> random_temporal(Rng& rng, int max_steps, double horizon) {
  std::vector<typename TemporalSignal<V>::Step> steps;
  double t = 0;
  int count = uniform_int(rng, 1, max_steps);
  for (int i = 0; i < count && t <= horizon; ++i) {
    V v;
    if constexpr (std::is_same_v<V, bool>)
      v = coin(rng);
    else
      v = 0.5 * uniform_int(rng, -4, 4);
    steps.push_back({t, v});
    t += uniform_int(rng, 1, 3);
  }
  return TemporalSignal<V>(std::move(steps), horizon);
}

}  // namespace strel::testing
