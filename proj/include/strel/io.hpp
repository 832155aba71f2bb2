#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "strel/signal.hpp"
#include "strel/space.hpp"

namespace strel {

/// Shortest decimal text that reads back to the same double; `inf`/`-inf`
/// for infinities.
std::string format_number(double v);
/// Parses what `format_number` writes (plus any decimal literal); throws
/// IoError naming `what` on failure.
double parse_number(std::string_view text, std::string_view what);

// Dynamical model JSON:
//   {"locations": n, "undirected": false,
//    "snapshots": [{"time": t, "edges": [[src, dst, w], ...]}, ...]}
// where w is a number or an [x, y] pair. With "undirected": true every
// listed edge stands for both directions.
DynamicalSpatialModel read_model(std::istream& in);
DynamicalSpatialModel read_model_file(const std::string& path);
/// Writes symmetric models in undirected form.
void write_model(std::ostream& out, const DynamicalSpatialModel& model);
void write_model_file(const std::string& path, const DynamicalSpatialModel& model);

// Trace CSV: header `location,time,<var>...`, rows sorted by location then
// strictly increasing time. Every location 0..n-1 must appear; the horizon
// is the largest time in the file. A final row repeating the previous sample
// only marks the end of the signal.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);
/// Each location's rows end with a row at the horizon so it reads back
/// unchanged.
void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

/// Verdict CSV `location,time,value`; Booleans as 0/1, with a closing row
/// at the horizon as in traces.
void write_signal(std::ostream& out, const SpatioTemporalSignal<bool>& s);
void write_signal(std::ostream& out, const SpatioTemporalSignal<double>& s);

std::string read_text_file(const std::string& path);

}  // namespace strel
