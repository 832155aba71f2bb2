#pragma once

// Named properties of the two case studies. Each builder returns the parsed
// formula; `*_text` returns the concrete syntax it parses.

#include <string>

#include "strel/logic.hpp"
#include "strel/space.hpp"

namespace strel::properties {

// Sensor network. Roles are the atoms coord, router and end_dev; hop
// distances are meant for the connectivity graph and euclid for the
// proximity graph.

/// An end device one hop from a router that reaches the coordinator
/// through routers.
std::string connect_text();
/// As connect, with every router on the way holding battery > 0.5.
std::string reliable_router_text();
std::string reliable_connect_text();
/// Whenever connect fails it holds again within h time units.
std::string connect_restore_text(double h);
/// Location l has a successor from which l is reachable again.
std::string cycle_text(Location l);
std::string acyclic_text(Location l);
/// High pollution is followed by high humidity within T.
std::string pollution_humidity_text(double T);
/// For the next T time units there is a route of safe readings leaving the
/// d-ball.
std::string safe_text(double T, double d);
/// A safe location lies within distance d.
std::string some_text(double d, double T, double safe_distance);
/// From everywhere, a target device is within d hops.
std::string target_text(double d);

// Epidemic. States are the atoms S, E, I, R.

/// Contact, within a day, with someone infected in the next two days leads
/// to infection within a week.
std::string dangerous_days_text();
/// No infection within the weight radius r keeps a node uninfected for T.
std::string safe_radius_text(double r, double T);

Formula connect();
Formula reliable_router();
Formula reliable_connect();
Formula connect_restore(double h);
Formula cycle(Location l);
Formula acyclic(Location l);
Formula pollution_humidity(double T);
Formula safe(double T, double d);
Formula some(double d, double T, double safe_distance);
Formula target(double d);
Formula dangerous_days();
Formula safe_radius(double r, double T);

}  // namespace strel::properties
