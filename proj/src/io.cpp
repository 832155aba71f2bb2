#include "strel/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include "json.hpp"
#include <sstream>
#include <vector>

#include "strel/error.hpp"

namespace strel {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() || std::isnan(v))
    throw IoError("invalid number '" + std::string(text) + "' in " + std::string(what));
  return v;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

// Model files.

namespace {

Weight read_weight(const json& w, std::size_t snapshot) {
  if (w.is_number()) return w.get<double>();
  if (w.is_array() && w.size() == 2 && w[0].is_number() && w[1].is_number())
    return Vec2{w[0].get<double>(), w[1].get<double>()};
  throw IoError("snapshot " + std::to_string(snapshot) +
                ": edge weight must be a number or an [x, y] pair");
}

Location read_location(const json& v, std::size_t snapshot) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw IoError("snapshot " + std::to_string(snapshot) + ": edge endpoints must be nonnegative integers");
  return static_cast<Location>(v.get<std::int64_t>());
}

json weight_json(const Weight& w) {
  if (const double* s = std::get_if<double>(&w)) return *s;
  const Vec2& v = std::get<Vec2>(w);
  return json::array({v.x, v.y});
}

bool symmetric(const SpatialModel& m) {
  for (const Edge& e : m.edges()) {
    std::optional<Weight> back = m.weight(e.dst, e.src);
    if (!back || !(*back == e.weight)) return false;
  }
  return true;
}

}  // namespace

DynamicalSpatialModel read_model(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw IoError("model JSON must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "locations" && key != "undirected" && key != "snapshots")
      throw IoError("unknown model field '" + key + "'");
  if (!doc.contains("locations") || !doc["locations"].is_number_integer() ||
      doc["locations"].get<std::int64_t>() <= 0)
    throw IoError("model field 'locations' must be a positive integer");
  const auto n = static_cast<std::size_t>(doc["locations"].get<std::int64_t>());
  bool undirected = false;
  if (doc.contains("undirected")) {
    if (!doc["undirected"].is_boolean()) throw IoError("model field 'undirected' must be a boolean");
    undirected = doc["undirected"].get<bool>();
  }
  if (!doc.contains("snapshots") || !doc["snapshots"].is_array() || doc["snapshots"].empty())
    throw IoError("model field 'snapshots' must be a nonempty array");
  std::vector<DynamicalSpatialModel::Snapshot> snapshots;
  std::size_t index = 0;
  for (const json& snap : doc["snapshots"]) {
    if (!snap.is_object() || !snap.contains("time") || !snap["time"].is_number() ||
        !snap.contains("edges") || !snap["edges"].is_array())
      throw IoError("snapshot " + std::to_string(index) + " needs a numeric 'time' and an 'edges' array");
    std::vector<Edge> edges;
    for (const json& e : snap["edges"]) {
      if (!e.is_array() || e.size() != 3)
        throw IoError("snapshot " + std::to_string(index) + ": edges must be [src, dst, w] triples");
      edges.push_back({read_location(e[0], index), read_location(e[1], index), read_weight(e[2], index)});
    }
    if (undirected) edges = undirected_edges(edges);
    snapshots.push_back({snap["time"].get<double>(), SpatialModel(n, std::move(edges))});
    ++index;
  }
  return DynamicalSpatialModel(std::move(snapshots));
}

DynamicalSpatialModel read_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  return read_model(in);
}

void write_model(std::ostream& out, const DynamicalSpatialModel& model) {
  bool undirected = true;
  for (const auto& s : model.snapshots()) undirected = undirected && symmetric(s.model);
  json snaps = json::array();
  for (const auto& s : model.snapshots()) {
    json edges = json::array();
    for (const Edge& e : s.model.edges()) {
      if (undirected && e.src > e.dst) continue;
      edges.push_back(json::array({e.src, e.dst, weight_json(e.weight)}));
    }
    snaps.push_back({{"time", s.time}, {"edges", std::move(edges)}});
  }
  json doc = {{"locations", model.location_count()}, {"undirected", undirected}, {"snapshots", std::move(snaps)}};
  out << doc.dump() << '\n';
  if (!out) throw IoError("failed writing model");
}

void write_model_file(const std::string& path, const DynamicalSpatialModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create '" + path + "'");
  write_model(out, model);
}

// Trace files.

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    std::string_view f = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
    fields.push_back(f);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <class V, class Format>
void write_rows(std::ostream& out, const std::vector<TemporalSignal<V>>& signals, Format format) {
  for (std::size_t l = 0; l < signals.size(); ++l) {
    const auto& s = signals[l];
    for (const auto& step : s.steps()) out << l << ',' << format_number(step.time) << ',' << format(step.value) << '\n';
    if (s.end_time() > s.steps().back().time)
      out << l << ',' << format_number(s.end_time()) << ',' << format(s.steps().back().value) << '\n';
  }
}

}  // namespace

Trace read_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> variables;
  bool header = false;
  struct Row {
    double time;
    std::vector<double> values;
  };
  std::vector<std::vector<Row>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string_view> fields = split(line);
    if (!header) {
      if (fields.size() < 2 || fields[0] != "location" || fields[1] != "time")
        throw IoError("trace header must start with 'location,time'");
      for (std::size_t i = 2; i < fields.size(); ++i) {
        if (fields[i].empty()) throw IoError("trace header has an empty variable name");
        variables.emplace_back(fields[i]);
      }
      header = true;
      continue;
    }
    const std::string where = "trace line " + std::to_string(line_no);
    if (fields.size() != variables.size() + 2)
      throw IoError(where + " has " + std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(variables.size() + 2));
    double loc = parse_number(fields[0], where);
    if (!(loc >= 0) || std::floor(loc) != loc || loc > 1e9)
      throw IoError(where + ": location must be a nonnegative integer");
    const auto l = static_cast<std::size_t>(loc);
    Row row;
    row.time = parse_number(fields[1], where);
    if (!std::isfinite(row.time)) throw IoError(where + ": time must be finite");
    for (std::size_t i = 2; i < fields.size(); ++i) row.values.push_back(parse_number(fields[i], where));
    if (l + 1 < rows.size()) throw IoError(where + ": rows must be sorted by location");
    if (l >= rows.size()) rows.resize(l + 1);
    if (!rows[l].empty() && !(rows[l].back().time < row.time))
      throw IoError(where + ": times must increase strictly within a location");
    rows[l].push_back(std::move(row));
  }
  if (in.bad()) throw IoError("failed reading trace");
  if (!header) throw IoError("trace file is empty");
  if (rows.empty()) throw IoError("trace has no rows");
  double horizon = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (rows[l].empty()) throw IoError("trace has no rows for location " + std::to_string(l));
    horizon = std::max(horizon, rows[l].back().time);
  }
  std::vector<TemporalSignal<Trace::Sample>> signals;
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (rows[l].front().time != rows[0].front().time)
      throw SemanticError("location " + std::to_string(l) + " starts at a different time than location 0");
    std::vector<TemporalSignal<Trace::Sample>::Step> steps;
    for (Row& r : rows[l]) steps.push_back({r.time, std::move(r.values)});
    // A closing row that repeats the previous sample only marks the horizon.
    if (steps.size() > 1 && steps.back().value == steps[steps.size() - 2].value) steps.pop_back();
    signals.emplace_back(std::move(steps), horizon);
  }
  return Trace(std::move(variables), std::move(signals));
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace file '" + path + "'");
  return read_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << "location,time";
  for (const std::string& v : trace.variables()) out << ',' << v;
  out << '\n';
  write_rows(out, trace.signals(), [](const Trace::Sample& x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i > 0) s += ',';
      s += format_number(x[i]);
    }
    return s;
  });
  if (!out) throw IoError("failed writing trace");
}

void write_trace_file(const std::string& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create '" + path + "'");
  write_trace(out, trace);
}

void write_signal(std::ostream& out, const SpatioTemporalSignal<bool>& s) {
  out << "location,time,value\n";
  write_rows(out, s.signals(), [](bool b) { return b ? "1" : "0"; });
  if (!out) throw IoError("failed writing verdicts");
}

void write_signal(std::ostream& out, const SpatioTemporalSignal<double>& s) {
  out << "location,time,value\n";
  write_rows(out, s.signals(), [](double v) { return format_number(v); });
  if (!out) throw IoError("failed writing verdicts");
}

}  // namespace strel
