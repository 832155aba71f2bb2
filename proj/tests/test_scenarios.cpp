#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "strel/error.hpp"
#include "strel/io.hpp"
#include "strel/properties.hpp"
#include "strel/scenarios.hpp"
#include "support.hpp"

using namespace strel;

namespace {

std::string model_text(const DynamicalSpatialModel& m) {
  std::ostringstream out;
  write_model(out, m);
  return out.str();
}

std::string trace_text(const Trace& t) {
  std::ostringstream out;
  write_trace(out, t);
  return out.str();
}

template <class Sample>
std::pair<double, double> moments(std::size_t n, Sample sample) {
  double sum = 0, sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = sample();
    sum += x;
    sq += x * x;
  }
  double mean = sum / static_cast<double>(n);
  return {mean, sq / static_cast<double>(n) - mean * mean};
}

EpidemicConfig small_epidemic(std::uint64_t seed) {
  EpidemicConfig cfg;
  cfg.node_count = 120;
  cfg.horizon = 40;
  cfg.seed = seed;
  return cfg;
}

int state_of(const Trace& trace, std::size_t l, std::size_t day) {
  return static_cast<int>(trace.at(l).value_at(static_cast<double>(day))[0]);
}

std::vector<std::size_t> component(const SpatialModel& m, std::size_t l) {
  std::vector<char> seen(m.location_count(), 0);
  std::vector<std::size_t> out{l};
  seen[l] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t e : m.out_edges(out[k])) {
      Location d = m.edge(e).dst;
      if (!seen[d]) {
        seen[d] = 1;
        out.push_back(d);
      }
    }
  return out;
}

// safe_radius(r, T) at time 0 evaluated straight from the daily trace, for
// radius 0 (only the location itself) or a radius covering its whole
// component. Everything is constant on [d, d+1), so G[0,T] at d + 1/2 looks
// one day further than at d.
std::size_t direct_safe_radius(const EpidemicRun& run, std::size_t T, bool whole_component) {
  const Trace& trace = run.trace;
  const std::size_t H = static_cast<std::size_t>(trace.end_time());
  const std::size_t n = trace.location_count();
  std::size_t count = 0;
  for (std::size_t l = 0; l < n; ++l) {
    bool ok = true;
    for (std::size_t d = 0; d + T <= H && ok; ++d) {
      bool antecedent = state_of(trace, l, d) != 2;
      if (whole_component && antecedent)
        for (std::size_t m : component(run.contacts.snapshot_at(static_cast<double>(d)), l))
          if (state_of(trace, m, d) == 2) antecedent = false;
      if (!antecedent) continue;
      const std::size_t last = std::min(H, d + T + (d + T < H ? 1 : 0));
      for (std::size_t k = d; k <= last; ++k)
        if (state_of(trace, l, k) == 2) ok = false;
    }
    count += ok ? 1 : 0;
  }
  return count;
}

}  // namespace

TEST_CASE("random streams are reproducible and independent") {
  Random a(7), b(7), c(8);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = a.bits();
    CHECK(x == b.bits());
    CHECK(x != c.bits());
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 3) == derive_seed(5, 3));

  Random r(11);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) ++hits[r.index(7)];
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  for (int i = 0; i < 1000; ++i) {
    double u = r.uniform(2, 3);
    CHECK(u >= 2);
    CHECK(u < 3);
  }
}

TEST_CASE("sampling distributions have the requested moments") {
  Random rng(3);
  auto [nm, nv] = moments(200000, [&] { return rng.normal(); });
  CHECK(std::abs(nm) < 0.01);
  CHECK(std::abs(nv - 1) < 0.02);

  auto [gm, gv] = moments(200000, [&] { return rng.gamma(4, 0.75); });
  CHECK(std::abs(gm - 3) < 0.02);
  CHECK(std::abs(gv - 2.25) < 0.05);

  auto [sm, sv] = moments(200000, [&] { return rng.gamma(0.5, 2); });
  CHECK(std::abs(sm - 1) < 0.02);
  CHECK(std::abs(sv - 2) < 0.08);

  auto [bm, bv] = moments(200000, [&] { return rng.beta(1, 19); });
  CHECK(std::abs(bm - 0.05) < 0.001);
  CHECK(std::abs(bv - 19.0 / (400 * 21)) < 0.0002);

  for (int i = 0; i < 10000; ++i) {
    double p = rng.beta(0.1, 1.9);
    CHECK(p >= 0);
    CHECK(p <= 1);
  }

  DurationDistribution d{3, 4};
  for (int i = 0; i < 10000; ++i) CHECK(sample_duration(rng, d) >= 1);
  DurationDistribution tiny{0.01, 1};
  for (int i = 0; i < 100; ++i) CHECK(sample_duration(rng, tiny) == 1);
}

TEST_CASE("lognormal parameters match mean and 99th percentile") {
  for (auto [mean, p99] : {std::pair{10.0, 50.0}, std::pair{10.0, 100.0}, std::pair{2.0, 3.0}}) {
    LognormalParameters p = lognormal_from_mean_p99(mean, p99);
    CHECK(std::exp(p.mu + p.sigma * p.sigma / 2) == doctest::Approx(mean).epsilon(1e-12));
    CHECK(std::exp(p.mu + 2.3263478740408408 * p.sigma) == doctest::Approx(p99).epsilon(1e-12));
  }
  LognormalParameters s = lognormal_from_mean_p99(10, 50);
  CHECK(s.mu == doctest::Approx(1.945).epsilon(1e-3));
  CHECK(s.sigma == doctest::Approx(0.845).epsilon(1e-3));
  CHECK_THROWS_AS(lognormal_from_mean_p99(10, 5), SemanticError);
  CHECK_THROWS_AS(lognormal_from_mean_p99(1, 1e9), SemanticError);

  Random rng(5);
  DegreeDistribution dyn{10, 100, 1000};
  double mx = 0;
  for (int i = 0; i < 20000; ++i) mx = std::max(mx, sample_degree(rng, dyn));
  CHECK(mx <= 1000);
  DegreeDistribution cut{10, 50, 12};
  for (int i = 0; i < 1000; ++i) CHECK(sample_degree(rng, cut) <= 12);
}

TEST_CASE("expected-degree graphs realize the sampled degrees") {
  Random rng(9);
  std::vector<double> w(500);
  for (double& x : w) x = sample_degree(rng, {10, 50, 200});
  auto edges = expected_degree_graph(rng, w);
  double mean_degree = 2.0 * static_cast<double>(edges.size()) / 500;
  CHECK(mean_degree > 8);
  CHECK(mean_degree < 12);
  std::set<std::pair<Location, Location>> unique(edges.begin(), edges.end());
  CHECK(unique.size() == edges.size());
  for (auto [a, b] : edges) CHECK(a < b);

  CHECK(expected_degree_graph(rng, {}).empty());
  CHECK(expected_degree_graph(rng, {0, 0, 0}).empty());
}

TEST_CASE("sensor network generator") {
  ManetConfig cfg;
  ManetScenario a = generate_manet(cfg);
  ManetScenario b = generate_manet(cfg);
  CHECK(model_text(a.proximity) == model_text(b.proximity));
  CHECK(model_text(a.connectivity) == model_text(b.connectivity));
  CHECK(trace_text(a.trace) == trace_text(b.trace));
  cfg.seed = 2;
  CHECK(trace_text(generate_manet(cfg).trace) != trace_text(a.trace));

  const Trace& t = a.trace;
  CHECK(t.variables() == std::vector<std::string>{"coord", "router", "end_dev", "target", "battery", "humidity",
                                                   "pollution", "x", "y"});
  CHECK(t.location_count() == 30);
  CHECK(t.end_time() == 20);
  CHECK(a.proximity.snapshot_count() == 20);
  std::size_t coords = 0, routers = 0, devices = 0, targets = 0;
  for (std::size_t l = 0; l < 30; ++l) {
    const auto& s = t.at(l).value_at(0);
    CHECK(s[0] + s[1] + s[2] == 1);
    coords += s[0] == 1;
    routers += s[1] == 1;
    devices += s[2] == 1;
    targets += s[3] == 1;
  }
  CHECK(coords == 1);
  CHECK(routers == 8);
  CHECK(devices == 21);
  CHECK(targets == 1);

  // Connectivity is exactly the radius relation on the recorded positions.
  for (std::size_t k = 0; k < a.connectivity.snapshot_count(); ++k) {
    const auto& snap = a.connectivity.snapshots()[k];
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = 0; j < 30; ++j) {
        if (i == j) continue;
        auto pi = t.at(i).value_at(snap.time), pj = t.at(j).value_at(snap.time);
        bool near = std::hypot(pi[7] - pj[7], pi[8] - pj[8]) <= cfg.radius;
        CHECK(snap.model.has_edge(i, j) == near);
      }
    // Proximity weights are displacement vectors.
    for (const Edge& e : a.proximity.snapshots()[k].model.edges()) {
      auto ps = t.at(e.src).value_at(snap.time), pd = t.at(e.dst).value_at(snap.time);
      const Vec2& v = std::get<Vec2>(e.weight);
      CHECK(v.x == doctest::Approx(ps[7] - pd[7]));
      CHECK(v.y == doctest::Approx(ps[8] - pd[8]));
    }
  }
  for (std::size_t l = 0; l < 30; ++l)
    for (double x : t.at(l).value_at(19)) CHECK(std::isfinite(x));

  ManetConfig still;
  still.jitter = 0;
  ManetScenario z = generate_manet(still);
  const std::string first = model_text(DynamicalSpatialModel::constant(z.proximity.snapshots()[0].model));
  for (const auto& s : z.proximity.snapshots())
    CHECK(model_text(DynamicalSpatialModel::constant(s.model)) == first);

  ManetConfig bad;
  bad.router_count = 30;
  CHECK_THROWS_WITH_AS(generate_manet(bad), doctest::Contains("router_count"), SemanticError);
}

TEST_CASE("sensor network properties monitor on generated scenarios") {
  ManetScenario s = generate_manet({});
  AtomicInterpretation interp(s.trace.variables());
  DistanceRegistry reg = DistanceRegistry::with_builtins();
  MonitorContext conn{s.connectivity, s.trace, interp, reg};
  MonitorContext prox{s.proximity, s.trace, interp, reg};
  for (const Formula& f : {properties::connect(), properties::reliable_connect(), properties::connect_restore(3),
                           properties::cycle(0), properties::acyclic(0), properties::target(5)}) {
    auto b = monitor(conn, f);
    auto q = monitor(conn, f, MaxMinDomain{});
    CHECK(b.location_count() == 30);
    for (std::size_t l = 0; l < 30; ++l) {
      double v = q[l].value_at(q[l].start_time());
      if (v != 0) CHECK((v > 0) == bool(b[l].value_at(b[l].start_time())));
    }
  }
  for (const Formula& f : {properties::pollution_humidity(5), properties::safe(5, 20), properties::some(30, 5, 20)})
    CHECK(monitor(prox, f).location_count() == 30);

  // The coordinator is connected through the empty route prefix.
  auto c = monitor(conn, properties::connect());
  auto acyclic = monitor(conn, properties::acyclic(3));
  auto cycle = monitor(conn, properties::cycle(3));
  for (std::size_t l = 0; l < 30; ++l)
    CHECK(acyclic[l].value_at(0) == !cycle[l].value_at(0));
  CHECK(c.location_count() == 30);
}

TEST_CASE("epidemic simulation") {
  EpidemicRun run = simulate_epidemic({});
  CHECK(run.trace.location_count() == 500);
  CHECK(run.trace.variables() == std::vector<std::string>{"state"});
  CHECK(run.trace.end_time() == 120);
  CHECK(run.census.size() == 121);
  CHECK(run.contacts.snapshot_count() == 120);
  CHECK(run.dynamic_layer.snapshot_count() == 120);
  CHECK(run.static_layer.snapshot_count() == 1);
  for (const auto& day : run.census) CHECK(day[0] + day[1] + day[2] + day[3] == 500);
  CHECK(run.census[0][2] == 5);

  double static_degree = static_cast<double>(run.static_layer.snapshots()[0].model.edge_count()) / 500;
  CHECK(static_degree > 8);
  CHECK(static_degree < 12);

  // A single wave that dies out.
  std::size_t peak = 0, peak_day = 0;
  for (std::size_t d = 0; d < run.census.size(); ++d)
    if (run.census[d][2] > peak) {
      peak = run.census[d][2];
      peak_day = d;
    }
  CHECK(peak > 50);
  CHECK(peak_day > 0);
  CHECK(static_cast<double>(run.census.back()[2]) <= 0.05 * static_cast<double>(peak));
  std::size_t recovered = 0;
  for (const auto& day : run.census) {
    CHECK(day[3] >= recovered);
    recovered = day[3];
  }

  // Transitions follow S -> E -> I -> R, one step at a time.
  for (std::size_t l = 0; l < 500; ++l)
    for (std::size_t d = 0; d < 120; ++d) {
      int a = state_of(run.trace, l, d), b = state_of(run.trace, l, d + 1);
      CHECK((a == b || b == a + 1));
    }

  // Union weights are -ln of the combined daily probability.
  const SpatialModel& s0 = run.static_layer.snapshots()[0].model;
  const SpatialModel& e0 = run.dynamic_layer.snapshots()[0].model;
  const SpatialModel& u0 = run.contacts.snapshots()[0].model;
  for (const Edge& e : u0.edges()) {
    double w = std::get<double>(e.weight);
    CHECK(std::isfinite(w));
    CHECK(w > 0);
    double q = 1;
    if (auto ws = s0.weight(e.src, e.dst)) q *= 1 - std::exp(-std::get<double>(*ws));
    if (auto wd = e0.weight(e.src, e.dst)) q *= 1 - std::exp(-std::get<double>(*wd));
    CHECK(std::exp(-w) == doctest::Approx(1 - q).epsilon(1e-9));
  }
  for (const Edge& e : s0.edges()) CHECK(u0.has_edge(e.src, e.dst));
  for (const Edge& e : e0.edges()) CHECK(u0.has_edge(e.src, e.dst));

  CHECK(model_text(simulate_epidemic({}).contacts) == model_text(run.contacts));
  CHECK(trace_text(simulate_epidemic({}).trace) == trace_text(run.trace));
}

TEST_CASE("degenerate epidemics") {
  EpidemicConfig none = small_epidemic(4);
  none.infection_mean = 0;
  EpidemicRun a = simulate_epidemic(none);
  for (const auto& day : a.census) {
    CHECK(day[1] == 0);
    CHECK(day[0] == 115);
  }
  CHECK(a.contacts.snapshots()[0].model.edge_count() == 0);

  EpidemicConfig healthy = small_epidemic(4);
  healthy.initial_infected = 0;
  EpidemicRun b = simulate_epidemic(healthy);
  for (const auto& s : b.trace.signals())
    for (const auto& step : s.steps()) CHECK(step.value[0] == 0);

  EpidemicConfig spiky = small_epidemic(4);
  spiky.infection_alpha = 0.05;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    spiky.seed = seed;
    EpidemicRun r = simulate_epidemic(spiky);
    for (const auto& snap : r.contacts.snapshots())
      for (const Edge& e : snap.model.edges()) CHECK(std::isfinite(std::get<double>(e.weight)));
  }

  EpidemicConfig only_static = small_epidemic(4);
  only_static.use_dynamic = false;
  EpidemicRun c = simulate_epidemic(only_static);
  CHECK(model_text(DynamicalSpatialModel::constant(c.contacts.snapshots()[3].model)) ==
        model_text(c.static_layer));

  EpidemicConfig bad = small_epidemic(1);
  bad.initial_infected = 1000;
  CHECK_THROWS_WITH_AS(simulate_epidemic(bad), doctest::Contains("initial_infected"), SemanticError);
  bad = small_epidemic(1);
  bad.infection_mean = 1.5;
  CHECK_THROWS_WITH_AS(simulate_epidemic(bad), doctest::Contains("infection_mean"), SemanticError);
  bad = small_epidemic(1);
  bad.static_degree.p99 = 5;
  CHECK_THROWS_WITH_AS(simulate_epidemic(bad), doctest::Contains("static_degree.p99"), SemanticError);
}

TEST_CASE("safe radius sweep") {
  EpidemicConfig cfg = small_epidemic(21);
  const std::vector<double> radii{0, 1, 2, 4, 8, 16, 1e9};
  SweepResult sweep = sweep_safe_radius(cfg, radii, 7, 3);
  REQUIRE(sweep.rows.size() == radii.size());
  REQUIRE(sweep.counts.size() == 3);
  for (const auto& run : sweep.counts) {
    REQUIRE(run.size() == radii.size());
    for (std::size_t k = 1; k < run.size(); ++k) CHECK(run[k - 1] <= run[k]);
  }
  for (std::size_t k = 0; k < radii.size(); ++k) {
    CHECK(sweep.rows[k].radius == radii[k]);
    std::vector<std::size_t> col;
    for (const auto& run : sweep.counts) col.push_back(run[k]);
    auto [m, s] = mean_and_stddev(col);
    CHECK(sweep.rows[k].mean == m);
    CHECK(sweep.rows[k].stddev == s);
  }

  // Extreme radii against direct inspection of the simulated trace.
  for (std::size_t run = 0; run < 3; ++run) {
    EpidemicConfig c = cfg;
    c.seed = derive_seed(cfg.seed, run);
    EpidemicRun sim = simulate_epidemic(c);
    CHECK(sweep.counts[run].front() == direct_safe_radius(sim, 7, false));
    CHECK(sweep.counts[run].back() == direct_safe_radius(sim, 7, true));
  }
}

TEST_CASE("dangerous days comparison runs both layers") {
  LayerComparison c = compare_dangerous_days(small_epidemic(2), 2);
  CHECK(c.static_counts.size() == 2);
  CHECK(c.dynamic_counts.size() == 2);
  for (std::size_t x : c.static_counts) CHECK(x <= 120);
  for (std::size_t x : c.dynamic_counts) CHECK(x <= 120);
}

TEST_CASE("mean and sample standard deviation") {
  CHECK(mean_and_stddev({}) == std::pair{0.0, 0.0});
  CHECK(mean_and_stddev({4}) == std::pair{4.0, 0.0});
  auto [m, s] = mean_and_stddev({2, 4, 4, 4, 5, 5, 7, 9});
  CHECK(m == 5);
  CHECK(s == doctest::Approx(std::sqrt(32.0 / 7)));
}

TEST_CASE("property library builds the documented trees") {
  Formula c = properties::connect();
  CHECK(c.kind() == NodeKind::Reach);
  CHECK(c.interval() == Interval::bounded(0, 1));
  CHECK(c.distance() == "hop");
  CHECK(c.left() == Formula::atomic("end_dev"));
  CHECK(c.right() == reach(Interval::all(), "hop", Formula::atomic("router"), Formula::atomic("coord")));

  Formula not_i = !Formula::atomic("I");
  CHECK(properties::safe_radius(3, 7) ==
        globally(implies(everywhere(Interval::bounded(0, 3), "weight", not_i), globally(Interval::bounded(0, 7), not_i))));
  CHECK(properties::dangerous_days() ==
        globally(implies(reach(Interval::bounded(0, 1), "hop", Formula::atomic("S"),
                               eventually(Interval::bounded(0, 2), Formula::atomic("I"))),
                         eventually(Interval::bounded(0, 7), Formula::atomic("I")))));
  CHECK(properties::target(4) == everywhere(Interval::all(), "hop",
                                            somewhere(Interval::bounded(0, 4), "hop",
                                                      Formula::compare("target", Comparison::greater, 0.5))));
  CHECK(properties::acyclic(2) == !properties::cycle(2));
  CHECK(properties::safe(5, 10).kind() == NodeKind::Globally);
  CHECK(properties::safe(5, 10).child(0).kind() == NodeKind::Escape);
  CHECK(properties::safe(5, 10).child(0).interval() == Interval::from(10));

  for (const std::string& text :
       {properties::connect_text(), properties::reliable_connect_text(), properties::connect_restore_text(2.5),
        properties::cycle_text(4), properties::acyclic_text(4), properties::pollution_humidity_text(3),
        properties::safe_text(5, 10), properties::some_text(20, 5, 10), properties::target_text(3),
        properties::dangerous_days_text(), properties::safe_radius_text(0.5, 7)})
    CHECK(parse(to_string(parse(text))) == parse(text));
}

TEST_CASE("configuration files") {
  ManetConfig m = manet_config_from_json(R"({"node_count": 12, "router_count": 3, "seed": 9,
                                             "battery": {"lo": 0.1, "start_lo": 0.5}})");
  CHECK(m.node_count == 12);
  CHECK(m.router_count == 3);
  CHECK(m.seed == 9);
  CHECK(m.battery.lo == 0.1);
  CHECK(m.battery.start_lo == 0.5);
  CHECK(m.battery.hi == 1.0);

  EpidemicConfig e = epidemic_config_from_json(R"({"node_count": 50, "attendance": [0.5],
                                                  "incubation": {"mean": 2}, "use_static": false})");
  CHECK(e.node_count == 50);
  CHECK(e.attendance == std::vector<double>{0.5});
  CHECK(e.incubation.mean == 2);
  CHECK(e.incubation.shape == 4);
  CHECK(!e.use_static);
  CHECK(epidemic_config_from_json("{}").node_count == 500);

  CHECK_THROWS_WITH_AS(epidemic_config_from_json(R"({"nodes": 5})"), doctest::Contains("'nodes'"), SemanticError);
  CHECK_THROWS_WITH_AS(epidemic_config_from_json(R"({"incubation": {"median": 5}})"),
                       doctest::Contains("incubation.median"), SemanticError);
  CHECK_THROWS_WITH_AS(epidemic_config_from_json(R"({"horizon": -3})"), doctest::Contains("horizon"), SemanticError);
  CHECK_THROWS_WITH_AS(epidemic_config_from_json(R"({"horizon": "x"})"), doctest::Contains("horizon"), SemanticError);
  CHECK_THROWS_WITH_AS(epidemic_config_from_json(R"({"attendance": [2]})"), doctest::Contains("attendance"),
                       SemanticError);
  CHECK_THROWS_WITH_AS(manet_config_from_json(R"({"radius": -1})"), doctest::Contains("radius"), SemanticError);
  CHECK_THROWS_WITH_AS(manet_config_from_json(R"({"humidity": 3})"), doctest::Contains("humidity"), SemanticError);
  CHECK_THROWS_AS(manet_config_from_json("{"), IoError);
  CHECK_THROWS_AS(epidemic_config_from_json("[1, 2"), IoError);
}
