#include "strel/properties.hpp"

#include "strel/io.hpp"

namespace strel::properties {

namespace {

std::string num(double v) { return format_number(v); }

}  // namespace

std::string connect_text() { return "end_dev reach(hop)[0,1] (router reach(hop) coord)"; }

std::string reliable_router_text() { return "((battery > 0.5) & router) reach(hop) coord"; }

std::string reliable_connect_text() { return "end_dev reach(hop)[0,1] (" + reliable_router_text() + ")"; }

std::string connect_restore_text(double h) {
  return "G (!(" + connect_text() + ") => F[0," + num(h) + "] (" + connect_text() + "))";
}

std::string cycle_text(Location l) {
  const std::string at = "at_" + std::to_string(l);
  return at + " reach(hop)[0,1] (!" + at + " & somewhere(hop) " + at + ")";
}

std::string acyclic_text(Location l) { return "!(" + cycle_text(l) + ")"; }

std::string pollution_humidity_text(double T) {
  return "(pollution > 150) => F[0," + num(T) + "] (humidity > 100)";
}

std::string safe_text(double T, double d) {
  return "G[0," + num(T) + "] escape(euclid)[" + num(d) + ",inf] ((humidity < 90) & (pollution < 150))";
}

std::string some_text(double d, double T, double safe_distance) {
  return "somewhere(euclid)[0," + num(d) + "] (" + safe_text(T, safe_distance) + ")";
}

std::string target_text(double d) {
  return "everywhere(hop) somewhere(hop)[0," + num(d) + "] (target > 0.5)";
}

std::string dangerous_days_text() { return "G ((S reach(hop)[0,1] F[0,2] I) => F[0,7] I)"; }

std::string safe_radius_text(double r, double T) {
  return "G (everywhere(weight)[0," + num(r) + "] !I => G[0," + num(T) + "] !I)";
}

Formula connect() { return parse(connect_text()); }
Formula reliable_router() { return parse(reliable_router_text()); }
Formula reliable_connect() { return parse(reliable_connect_text()); }
Formula connect_restore(double h) { return parse(connect_restore_text(h)); }
Formula cycle(Location l) { return parse(cycle_text(l)); }
Formula acyclic(Location l) { return parse(acyclic_text(l)); }
Formula pollution_humidity(double T) { return parse(pollution_humidity_text(T)); }
Formula safe(double T, double d) { return parse(safe_text(T, d)); }
Formula some(double d, double T, double safe_distance) { return parse(some_text(d, T, safe_distance)); }
Formula target(double d) { return parse(target_text(d)); }
Formula dangerous_days() { return parse(dangerous_days_text()); }
Formula safe_radius(double r, double T) { return parse(safe_radius_text(r, T)); }

}  // namespace strel::properties
