#include "strel/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"
#include "strel/distance.hpp"
#include "strel/error.hpp"
#include "strel/geometry.hpp"
#include "strel/interpretation.hpp"
#include "strel/monitor.hpp"
#include "strel/properties.hpp"

namespace strel {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw SemanticError("config field '" + field + "' " + what);
}

void validate_walk(const RandomWalkConfig& w, const std::string& name) {
  require(std::isfinite(w.lo) && std::isfinite(w.hi) && w.lo <= w.hi, name + ".lo", "must not exceed " + name + ".hi");
  require(w.start_lo <= w.start_hi, name + ".start_lo", "must not exceed " + name + ".start_hi");
  require(w.start_lo >= w.lo && w.start_hi <= w.hi, name + ".start_lo", "must lie inside [lo, hi]");
  require(std::isfinite(w.step) && w.step >= 0, name + ".step", "must be nonnegative");
  require(std::isfinite(w.drift), name + ".drift", "must be finite");
}

double walk(Random& rng, const RandomWalkConfig& w, double x) {
  return std::clamp(x + w.drift + rng.uniform(-w.step, w.step), w.lo, w.hi);
}

}  // namespace

// Sensor network.

void validate(const ManetConfig& cfg) {
  require(cfg.node_count >= 2, "node_count", "must be at least 2");
  require(cfg.router_count < cfg.node_count, "router_count", "must leave room for the coordinator");
  require(std::isfinite(cfg.area) && cfg.area > 0, "area", "must be positive");
  require(std::isfinite(cfg.radius) && cfg.radius >= 0, "radius", "must be nonnegative");
  require(std::isfinite(cfg.jitter) && cfg.jitter >= 0, "jitter", "must be nonnegative");
  require(cfg.steps >= 1, "steps", "must be at least 1");
  require(std::isfinite(cfg.step_duration) && cfg.step_duration > 0, "step_duration", "must be positive");
  validate_walk(cfg.battery, "battery");
  validate_walk(cfg.humidity, "humidity");
  validate_walk(cfg.pollution, "pollution");
}

ManetScenario generate_manet(const ManetConfig& cfg) {
  validate(cfg);
  Random rng(cfg.seed);
  const std::size_t n = cfg.node_count;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  enum Role { coord, router, end_dev };
  std::vector<Role> role(n, end_dev);
  role[order[0]] = coord;
  for (std::size_t k = 1; k <= cfg.router_count; ++k) role[order[k]] = router;
  const std::size_t target = rng.index(n);

  std::vector<Vec2> pos(n);
  std::vector<double> battery(n), humidity(n), pollution(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = {rng.uniform(0, cfg.area), rng.uniform(0, cfg.area)};
    battery[i] = rng.uniform(cfg.battery.start_lo, cfg.battery.start_hi);
    humidity[i] = rng.uniform(cfg.humidity.start_lo, cfg.humidity.start_hi);
    pollution[i] = rng.uniform(cfg.pollution.start_lo, cfg.pollution.start_hi);
  }

  std::vector<DynamicalSpatialModel::Snapshot> proximity, connectivity;
  std::vector<std::vector<TemporalSignal<Trace::Sample>::Step>> steps(n);
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    const double t = static_cast<double>(k) * cfg.step_duration;
    if (k > 0) {
      for (std::size_t i = 0; i < n; ++i) {
        pos[i].x = std::clamp(pos[i].x + rng.uniform(-cfg.jitter, cfg.jitter), 0.0, cfg.area);
        pos[i].y = std::clamp(pos[i].y + rng.uniform(-cfg.jitter, cfg.jitter), 0.0, cfg.area);
        battery[i] = walk(rng, cfg.battery, battery[i]);
        humidity[i] = walk(rng, cfg.humidity, humidity[i]);
        pollution[i] = walk(rng, cfg.pollution, pollution[i]);
      }
    }
    proximity.push_back({t, euclidean_model(pos, delaunay_proximity(pos))});
    std::vector<Edge> links;
    for (auto [a, b] : connectivity_graph(pos, cfg.radius)) links.push_back({a, b, 1.0});
    connectivity.push_back({t, SpatialModel(n, std::move(links))});
    for (std::size_t i = 0; i < n; ++i)
      steps[i].push_back({t,
                          {role[i] == coord ? 1.0 : 0.0, role[i] == router ? 1.0 : 0.0,
                           role[i] == end_dev ? 1.0 : 0.0, i == target ? 1.0 : 0.0, battery[i], humidity[i],
                           pollution[i], pos[i].x, pos[i].y}});
  }
  const double horizon = static_cast<double>(cfg.steps) * cfg.step_duration;
  std::vector<TemporalSignal<Trace::Sample>> per;
  for (auto& s : steps) per.emplace_back(std::move(s), horizon);
  return {DynamicalSpatialModel(std::move(proximity)), DynamicalSpatialModel(std::move(connectivity)),
          Trace({"coord", "router", "end_dev", "target", "battery", "humidity", "pollution", "x", "y"},
                std::move(per))};
}

// Epidemic.

LognormalParameters lognormal_from_mean_p99(double mean, double p99) {
  constexpr double z99 = 2.3263478740408408;  // standard normal 0.99 quantile
  if (!(mean > 0) || !(p99 > mean))
    throw SemanticError("a lognormal degree distribution needs 0 < mean < p99");
  const double gap = std::log(p99) - std::log(mean);
  const double disc = z99 * z99 - 2 * gap;
  if (disc < 0) throw SemanticError("no lognormal has this mean and 99th percentile");
  const double sigma = z99 - std::sqrt(disc);
  return {std::log(mean) - sigma * sigma / 2, sigma};
}

double sample_degree(Random& rng, const DegreeDistribution& d) {
  const LognormalParameters p = lognormal_from_mean_p99(d.mean, d.p99);
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    double x = rng.lognormal(p.mu, p.sigma);
    if (x <= d.cutoff) return x;
  }
  throw SemanticError("degree cutoff rejects almost every sample");
}

int sample_duration(Random& rng, const DurationDistribution& d) {
  double days = rng.gamma(d.shape, d.mean / d.shape);
  return std::max(1, static_cast<int>(std::lround(days)));
}

std::vector<std::pair<Location, Location>> expected_degree_graph(Random& rng, const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) total += w;
  std::vector<std::pair<Location, Location>> out;
  if (!(total > 0)) return out;
  for (Location i = 0; i < weights.size(); ++i)
    for (Location j = i + 1; j < weights.size(); ++j)
      if (rng.bernoulli(std::min(1.0, weights[i] * weights[j] / total))) out.emplace_back(i, j);
  return out;
}

void validate(const EpidemicConfig& cfg) {
  require(cfg.node_count >= 1, "node_count", "must be positive");
  for (auto [d, name] : {std::pair{&cfg.static_degree, "static_degree"}, std::pair{&cfg.dynamic_degree, "dynamic_degree"}}) {
    const std::string f(name);
    require(std::isfinite(d->mean) && d->mean > 0, f + ".mean", "must be positive");
    require(std::isfinite(d->p99) && d->p99 > d->mean, f + ".p99", "must exceed the mean");
    require(d->cutoff > 0, f + ".cutoff", "must be positive");
    try {
      lognormal_from_mean_p99(d->mean, d->p99);
    } catch (const SemanticError& e) {
      require(false, f, e.what());
    }
  }
  require(!cfg.attendance.empty(), "attendance", "must list at least one frequency");
  for (double a : cfg.attendance) require(a >= 0 && a <= 1, "attendance", "frequencies must lie in [0, 1]");
  require(cfg.infection_mean >= 0 && cfg.infection_mean < 1, "infection_mean", "must lie in [0, 1)");
  require(std::isfinite(cfg.infection_alpha) && cfg.infection_alpha > 0, "infection_alpha", "must be positive");
  for (auto [d, name] : {std::pair{&cfg.incubation, "incubation"}, std::pair{&cfg.infectious, "infectious"}}) {
    const std::string f(name);
    require(std::isfinite(d->mean) && d->mean > 0, f + ".mean", "must be positive");
    require(std::isfinite(d->shape) && d->shape > 0, f + ".shape", "must be positive");
  }
  require(cfg.horizon >= 1, "horizon", "must be at least one day");
  require(cfg.initial_infected <= cfg.node_count, "initial_infected", "must not exceed node_count");
}

namespace {

using Pair = std::pair<Location, Location>;

class EpidemicSimulator {
 public:
  explicit EpidemicSimulator(const EpidemicConfig& cfg) : cfg_(cfg), rng_(cfg.seed), n_(cfg.node_count) {}

  EpidemicRun run() {
    std::map<Pair, double> layer = sample_static();
    EpidemicRun out;
    out.static_layer = DynamicalSpatialModel::constant(to_model(layer));
    std::vector<double> attendance(n_);
    for (double& a : attendance) a = cfg_.attendance[rng_.index(cfg_.attendance.size())];

    std::vector<Health> state(n_, Health::S);
    std::vector<int> timer(n_, 0);
    std::vector<std::size_t> ids(n_);
    for (std::size_t i = 0; i < n_; ++i) ids[i] = i;
    for (std::size_t k = 0; k < cfg_.initial_infected; ++k) {
      std::swap(ids[k], ids[k + rng_.index(n_ - k)]);
      state[ids[k]] = Health::I;
      timer[ids[k]] = sample_duration(rng_, cfg_.infectious);
    }

    std::vector<DynamicalSpatialModel::Snapshot> contacts, events;
    std::vector<std::vector<TemporalSignal<Trace::Sample>::Step>> steps(n_);
    for (std::size_t day = 0;; ++day) {
      const double t = static_cast<double>(day);
      std::array<std::size_t, 4> census{};
      for (std::size_t i = 0; i < n_; ++i) {
        steps[i].push_back({t, {static_cast<double>(state[i])}});
        ++census[static_cast<std::size_t>(state[i])];
      }
      out.census.push_back(census);
      if (day == cfg_.horizon) break;

      std::map<Pair, double> event = sample_events(attendance);
      std::map<Pair, double> daily;
      if (cfg_.use_static) daily = layer;
      if (cfg_.use_dynamic)
        for (const auto& [pair, p] : event) {
          auto [it, fresh] = daily.emplace(pair, p);
          // Either contact may transmit.
          if (!fresh) it->second = it->second + p - it->second * p;
        }
      events.push_back({t, to_model(event)});
      contacts.push_back({t, to_model(daily)});
      advance(state, timer, daily);
    }
    std::vector<TemporalSignal<Trace::Sample>> per;
    for (auto& s : steps) per.emplace_back(std::move(s), static_cast<double>(cfg_.horizon));
    out.trace = Trace({"state"}, std::move(per));
    out.contacts = DynamicalSpatialModel(std::move(contacts));
    out.dynamic_layer = DynamicalSpatialModel(std::move(events));
    return out;
  }

 private:
  double infection_probability() {
    if (cfg_.infection_mean == 0) return 0;
    const double b = cfg_.infection_alpha * (1 - cfg_.infection_mean) / cfg_.infection_mean;
    return std::min(rng_.beta(cfg_.infection_alpha, b), std::nextafter(1.0, 0.0));
  }

  std::map<Pair, double> with_probabilities(const std::vector<Pair>& pairs) {
    std::map<Pair, double> out;
    for (const Pair& p : pairs) {
      double prob = infection_probability();
      // Pairs that can never transmit are not contacts.
      if (prob > 0) out.emplace(p, prob);
    }
    return out;
  }

  std::map<Pair, double> sample_static() {
    std::vector<double> degree(n_);
    for (double& d : degree) d = sample_degree(rng_, cfg_.static_degree);
    return with_probabilities(expected_degree_graph(rng_, degree));
  }

  std::map<Pair, double> sample_events(const std::vector<double>& attendance) {
    std::vector<Location> present;
    for (Location i = 0; i < n_; ++i)
      if (rng_.bernoulli(attendance[i])) present.push_back(i);
    std::vector<double> degree(present.size());
    for (double& d : degree) d = sample_degree(rng_, cfg_.dynamic_degree);
    std::vector<Pair> pairs;
    for (auto [a, b] : expected_degree_graph(rng_, degree)) pairs.emplace_back(present[a], present[b]);
    return with_probabilities(pairs);
  }

  SpatialModel to_model(const std::map<Pair, double>& edges) const {
    std::vector<Edge> out;
    out.reserve(2 * edges.size());
    for (const auto& [pair, p] : edges) {
      out.push_back({pair.first, pair.second, -std::log(p)});
      out.push_back({pair.second, pair.first, -std::log(p)});
    }
    return SpatialModel(n_, std::move(out));
  }

  void advance(std::vector<Health>& state, std::vector<int>& timer, const std::map<Pair, double>& daily) {
    std::vector<char> exposed(n_, 0);
    for (const auto& [pair, p] : daily) {
      auto [a, b] = pair;
      if (state[a] == Health::S && state[b] == Health::I && rng_.bernoulli(p)) exposed[a] = 1;
      if (state[b] == Health::S && state[a] == Health::I && rng_.bernoulli(p)) exposed[b] = 1;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      switch (state[i]) {
        case Health::S:
          if (exposed[i]) {
            state[i] = Health::E;
            timer[i] = sample_duration(rng_, cfg_.incubation);
          }
          break;
        case Health::E:
          if (--timer[i] == 0) {
            state[i] = Health::I;
            timer[i] = sample_duration(rng_, cfg_.infectious);
          }
          break;
        case Health::I:
          if (--timer[i] == 0) state[i] = Health::R;
          break;
        case Health::R: break;
      }
    }
  }

  const EpidemicConfig& cfg_;
  Random rng_;
  std::size_t n_;
};

std::size_t satisfied_at_start(const DynamicalSpatialModel& model, const Trace& trace, const Formula& f) {
  AtomicInterpretation interp(trace.variables());
  add_epidemic_labels(interp);
  DistanceRegistry reg = DistanceRegistry::with_builtins();
  SpatioTemporalSignal<bool> s = monitor(MonitorContext{model, trace, interp, reg}, f);
  std::size_t count = 0;
  for (const auto& sig : s.signals()) count += sig.value_at(sig.start_time()) ? 1 : 0;
  return count;
}

EpidemicConfig run_config(const EpidemicConfig& cfg, std::size_t run) {
  EpidemicConfig c = cfg;
  c.seed = derive_seed(cfg.seed, run);
  return c;
}

}  // namespace

EpidemicRun simulate_epidemic(const EpidemicConfig& cfg) {
  validate(cfg);
  return EpidemicSimulator(cfg).run();
}

// Experiments.

std::pair<double, double> mean_and_stddev(const std::vector<std::size_t>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0;
  for (std::size_t x : xs) mean += static_cast<double>(x);
  mean /= static_cast<double>(xs.size());
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0;
  for (std::size_t x : xs) ss += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

SweepResult sweep_safe_radius(const EpidemicConfig& cfg, const std::vector<double>& radii, double window,
                              std::size_t runs) {
  validate(cfg);
  SweepResult out;
  std::vector<Formula> formulas;
  for (double r : radii) formulas.push_back(properties::safe_radius(r, window));
  for (std::size_t run = 0; run < runs; ++run) {
    EpidemicRun sim = simulate_epidemic(run_config(cfg, run));
    AtomicInterpretation interp(sim.trace.variables());
    add_epidemic_labels(interp);
    DistanceRegistry reg = DistanceRegistry::with_builtins();
    Monitor<BooleanDomain> m(MonitorContext{sim.contacts, sim.trace, interp, reg});
    std::vector<std::size_t> counts;
    for (const Formula& f : formulas) {
      SpatioTemporalSignal<bool> s = m.evaluate(f);
      std::size_t c = 0;
      for (const auto& sig : s.signals()) c += sig.value_at(sig.start_time()) ? 1 : 0;
      counts.push_back(c);
    }
    out.counts.push_back(std::move(counts));
  }
  for (std::size_t k = 0; k < radii.size(); ++k) {
    std::vector<std::size_t> column;
    for (const auto& row : out.counts) column.push_back(row[k]);
    auto [mean, sd] = mean_and_stddev(column);
    out.rows.push_back({radii[k], mean, sd});
  }
  return out;
}

LayerComparison compare_dangerous_days(const EpidemicConfig& cfg, std::size_t runs) {
  validate(cfg);
  LayerComparison out;
  const Formula f = properties::dangerous_days();
  for (std::size_t run = 0; run < runs; ++run) {
    EpidemicRun sim = simulate_epidemic(run_config(cfg, run));
    out.static_counts.push_back(satisfied_at_start(sim.static_layer, sim.trace, f));
    out.dynamic_counts.push_back(satisfied_at_start(sim.dynamic_layer, sim.trace, f));
  }
  return out;
}

// Configuration files.

namespace {

using nlohmann::json;

class ConfigReader {
 public:
  ConfigReader(const json& object, std::string prefix) : object_(object), prefix_(std::move(prefix)) {
    if (!object_.is_object()) throw SemanticError("config field '" + name("") + "' must be an object");
  }

  void number(const char* key, double& out) {
    if (const json* v = take(key)) {
      require(v->is_number(), name(key), "must be a number");
      out = v->get<double>();
    }
  }

  void count(const char* key, std::size_t& out) {
    if (const json* v = take(key)) {
      require(v->is_number_unsigned() || (v->is_number_integer() && v->get<long long>() >= 0), name(key),
              "must be a nonnegative integer");
      out = v->get<std::size_t>();
    }
  }

  void seed(const char* key, std::uint64_t& out) {
    if (const json* v = take(key)) {
      require(v->is_number_unsigned() || (v->is_number_integer() && v->get<long long>() >= 0), name(key),
              "must be a nonnegative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void flag(const char* key, bool& out) {
    if (const json* v = take(key)) {
      require(v->is_boolean(), name(key), "must be a boolean");
      out = v->get<bool>();
    }
  }

  void numbers(const char* key, std::vector<double>& out) {
    if (const json* v = take(key)) {
      require(v->is_array(), name(key), "must be an array of numbers");
      out.clear();
      for (const json& x : *v) {
        require(x.is_number(), name(key), "must be an array of numbers");
        out.push_back(x.get<double>());
      }
    }
  }

  template <class Read>
  void nested(const char* key, Read read) {
    if (const json* v = take(key)) {
      ConfigReader sub(*v, name(key));
      read(sub);
      sub.finish();
    }
  }

  /// Rejects keys nobody asked for.
  void finish() const {
    for (auto it = object_.begin(); it != object_.end(); ++it)
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
        throw SemanticError("unknown config field '" + name(it.key()) + "'");
  }

 private:
  const json* take(const char* key) {
    seen_.emplace_back(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  std::string name(const std::string& key) const {
    if (prefix_.empty()) return key.empty() ? "<root>" : key;
    return key.empty() ? prefix_ : prefix_ + "." + key;
  }

  const json& object_;
  std::string prefix_;
  std::vector<std::string> seen_;
};

json parse_config(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed config JSON: ") + e.what());
  }
}

void read_walk(ConfigReader& r, RandomWalkConfig& w) {
  r.number("start_lo", w.start_lo);
  r.number("start_hi", w.start_hi);
  r.number("step", w.step);
  r.number("drift", w.drift);
  r.number("lo", w.lo);
  r.number("hi", w.hi);
}

void read_degree(ConfigReader& r, DegreeDistribution& d) {
  r.number("mean", d.mean);
  r.number("p99", d.p99);
  r.number("cutoff", d.cutoff);
}

void read_duration(ConfigReader& r, DurationDistribution& d) {
  r.number("mean", d.mean);
  r.number("shape", d.shape);
}

}  // namespace

ManetConfig manet_config_from_json(const std::string& text) {
  json doc = parse_config(text);
  ManetConfig cfg;
  ConfigReader r(doc, "");
  r.count("node_count", cfg.node_count);
  r.count("router_count", cfg.router_count);
  r.number("area", cfg.area);
  r.number("radius", cfg.radius);
  r.number("jitter", cfg.jitter);
  r.count("steps", cfg.steps);
  r.number("step_duration", cfg.step_duration);
  r.nested("battery", [&](ConfigReader& s) { read_walk(s, cfg.battery); });
  r.nested("humidity", [&](ConfigReader& s) { read_walk(s, cfg.humidity); });
  r.nested("pollution", [&](ConfigReader& s) { read_walk(s, cfg.pollution); });
  r.seed("seed", cfg.seed);
  r.finish();
  validate(cfg);
  return cfg;
}

EpidemicConfig epidemic_config_from_json(const std::string& text) {
  json doc = parse_config(text);
  EpidemicConfig cfg;
  ConfigReader r(doc, "");
  r.count("node_count", cfg.node_count);
  r.nested("static_degree", [&](ConfigReader& s) { read_degree(s, cfg.static_degree); });
  r.nested("dynamic_degree", [&](ConfigReader& s) { read_degree(s, cfg.dynamic_degree); });
  r.numbers("attendance", cfg.attendance);
  r.number("infection_mean", cfg.infection_mean);
  r.number("infection_alpha", cfg.infection_alpha);
  r.nested("incubation", [&](ConfigReader& s) { read_duration(s, cfg.incubation); });
  r.nested("infectious", [&](ConfigReader& s) { read_duration(s, cfg.infectious); });
  r.count("horizon", cfg.horizon);
  r.count("initial_infected", cfg.initial_infected);
  r.flag("use_static", cfg.use_static);
  r.flag("use_dynamic", cfg.use_dynamic);
  r.seed("seed", cfg.seed);
  r.finish();
  validate(cfg);
  return cfg;
}

}  // namespace strel
