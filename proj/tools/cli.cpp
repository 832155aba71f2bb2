#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "strel/distance.hpp"
#include "strel/error.hpp"
#include "strel/interpretation.hpp"
#include "strel/io.hpp"
#include "strel/logic.hpp"
#include "strel/monitor.hpp"
#include "strel/scenarios.hpp"

namespace strel::cli {

namespace {

std::ofstream create(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create '" + path + "'");
  return out;
}

std::pair<std::string, std::string> split_binding(const std::string& text, char sep, const std::string& flag) {
  std::size_t at = text.find(sep);
  if (at == std::string::npos || at == 0 || at + 1 == text.size())
    throw SemanticError("malformed " + flag + " '" + text + "'");
  return {text.substr(0, at), text.substr(at + 1)};
}

struct MonitorArgs {
  std::string model;
  std::string trace;
  std::string formula;
  std::string formula_file;
  std::string domain = "boolean";
  std::vector<std::string> dists;
  std::vector<std::string> labels;
  std::string out;
};

template <class V>
void print_start(std::ostream& out, const SpatioTemporalSignal<V>& s) {
  out << "location,value\n";
  for (std::size_t l = 0; l < s.location_count(); ++l) {
    V v = s[l].value_at(s[l].start_time());
    if constexpr (std::is_same_v<V, bool>)
      out << l << ',' << (v ? "true" : "false") << '\n';
    else
      out << l << ',' << format_number(v) << '\n';
  }
}

int cmd_monitor(const MonitorArgs& a, std::ostream& out) {
  const std::string text = a.formula_file.empty() ? a.formula : read_text_file(a.formula_file);
  Formula f = parse(text);
  DynamicalSpatialModel model = read_model_file(a.model);
  Trace trace = read_trace_file(a.trace);

  DistanceRegistry reg = DistanceRegistry::with_builtins();
  for (const std::string& d : a.dists) {
    auto [name, builtin] = split_binding(d, '=', "--dist");
    reg.add(name, builtin_distance(builtin, name));
  }
  AtomicInterpretation interp(trace.variables());
  if (trace.has_variable("state")) add_epidemic_labels(interp);
  for (const std::string& l : a.labels) {
    auto [name, rest] = split_binding(l, '=', "--label");
    auto [variable, code] = split_binding(rest, ':', "--label");
    interp.add_label(name, variable, parse_number(code, "--label"));
  }

  MonitorContext ctx{model, trace, interp, reg};
  auto emit = [&](const auto& s) {
    if (!a.out.empty()) {
      std::ofstream file = create(a.out);
      write_signal(file, s);
    }
    print_start(out, s);
  };
  if (a.domain == "boolean")
    emit(monitor(ctx, f));
  else
    emit(monitor(ctx, f, MaxMinDomain{}));
  return ok;
}

struct SimulateArgs {
  std::string kind;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const std::string text = a.config.empty() ? "{}" : read_text_file(a.config);
  std::vector<std::string> written;
  auto model_file = [&](const std::string& suffix, const DynamicalSpatialModel& m) {
    written.push_back(a.out + suffix);
    write_model_file(written.back(), m);
  };
  auto trace_file = [&](const Trace& t) {
    written.push_back(a.out + "_trace.csv");
    write_trace_file(written.back(), t);
  };
  if (a.kind == "manet") {
    ManetConfig cfg = manet_config_from_json(text);
    if (a.seed) cfg.seed = *a.seed;
    ManetScenario s = generate_manet(cfg);
    model_file("_proximity.json", s.proximity);
    model_file("_connectivity.json", s.connectivity);
    trace_file(s.trace);
  } else {
    EpidemicConfig cfg = epidemic_config_from_json(text);
    if (a.seed) cfg.seed = *a.seed;
    EpidemicRun run = simulate_epidemic(cfg);
    model_file("_contacts.json", run.contacts);
    model_file("_static.json", run.static_layer);
    model_file("_dynamic.json", run.dynamic_layer);
    trace_file(run.trace);
    written.push_back(a.out + "_census.csv");
    std::ofstream census = create(written.back());
    census << "day,S,E,I,R\n";
    for (std::size_t d = 0; d < run.census.size(); ++d) {
      census << d;
      for (std::size_t c : run.census[d]) census << ',' << c;
      census << '\n';
    }
    if (!census) throw IoError("failed writing '" + written.back() + "'");
  }
  for (const std::string& w : written) out << w << '\n';
  return ok;
}

struct SweepArgs {
  std::string config;
  std::vector<double> radii{0, 1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32};
  double window = 7;
  std::size_t runs = 20;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  EpidemicConfig cfg = epidemic_config_from_json(a.config.empty() ? "{}" : read_text_file(a.config));
  if (a.seed) cfg.seed = *a.seed;
  if (a.runs == 0) throw SemanticError("--runs must be positive");
  if (!(a.window >= 0)) throw SemanticError("--window must be nonnegative");
  for (double r : a.radii)
    if (!(r >= 0)) throw SemanticError("--radii must be nonnegative");
  SweepResult res = sweep_safe_radius(cfg, a.radii, a.window, a.runs);
  auto write = [&](std::ostream& o) {
    o << "r,mean,std\n";
    for (const SweepRow& row : res.rows)
      o << format_number(row.radius) << ',' << format_number(row.mean) << ',' << format_number(row.stddev) << '\n';
  };
  if (a.out.empty()) {
    write(out);
  } else {
    std::ofstream file = create(a.out);
    write(file);
    if (!file) throw IoError("failed writing '" + a.out + "'");
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offline monitor for spatio-temporal reach and escape properties", "strel"};
  app.require_subcommand(1);

  MonitorArgs m;
  CLI::App* mon = app.add_subcommand("monitor", "Monitor a formula over a model and a trace");
  mon->add_option("--model", m.model, "Model JSON file")->required();
  mon->add_option("--trace", m.trace, "Trace CSV file")->required();
  auto* inline_formula = mon->add_option("--formula", m.formula, "Formula text");
  auto* file_formula = mon->add_option("--formula-file", m.formula_file, "File holding the formula");
  inline_formula->excludes(file_formula);
  mon->add_option("--domain", m.domain, "boolean or quantitative")
      ->check(CLI::IsMember({"boolean", "quantitative"}));
  mon->add_option("--dist", m.dists, "Distance binding name=hop|weight|euclid (repeatable)");
  mon->add_option("--label", m.labels, "Atom NAME true where variable equals code: NAME=var:code (repeatable)");
  mon->add_option("--out", m.out, "Write the verdict signal CSV here");

  SimulateArgs s;
  CLI::App* sim = app.add_subcommand("simulate", "Generate a case-study model and trace");
  sim->add_option("kind", s.kind, "manet or epidemic")->required()->check(CLI::IsMember({"manet", "epidemic"}));
  sim->add_option("--config", s.config, "JSON configuration file");
  sim->add_option("--seed", s.seed, "Random seed (overrides the configuration)");
  sim->add_option("--out", s.out, "Output file prefix")->required();

  SweepArgs w;
  CLI::App* sw = app.add_subcommand("sweep", "Count nodes satisfying safe_radius over a range of radii");
  sw->add_option("--config", w.config, "Epidemic JSON configuration file");
  sw->add_option("--radii", w.radii, "Comma-separated radii")->delimiter(',');
  sw->add_option("--window", w.window, "Days T in safe_radius(r, T)");
  sw->add_option("--runs", w.runs, "Simulations per radius");
  sw->add_option("--seed", w.seed, "Random seed (overrides the configuration)");
  sw->add_option("--out", w.out, "Write the CSV here instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return ok;
    }
    app.exit(e, out, err);
    return semantic_failure;
  }

  try {
    if (mon->parsed()) {
      if (m.formula.empty() && m.formula_file.empty())
        throw SemanticError("monitor needs --formula or --formula-file");
      return cmd_monitor(m, out);
    }
    if (sim->parsed()) return cmd_simulate(s, out);
    return cmd_sweep(w, out);
  } catch (const ParseError& e) {
    err << "strel: parse error at " << e.what() << '\n';
    return parse_failure;
  } catch (const SemanticError& e) {
    err << "strel: " << e.what() << '\n';
    return semantic_failure;
  } catch (const IoError& e) {
    err << "strel: " << e.what() << '\n';
    return io_failure;
  }
}

}  // namespace strel::cli
