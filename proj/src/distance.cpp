#include "strel/distance.hpp"

#include <cmath>
#include <queue>
#include <utility>

#include "strel/error.hpp"

namespace strel {

DistanceFunction hop_distance(std::string name) {
  return {std::move(name), DistanceDomain::hop(), [](const Weight&) { return 1.0; }};
}

DistanceFunction weight_distance(std::string name) {
  return {std::move(name), DistanceDomain::real(), [](const Weight& w) {
            if (const double* s = std::get_if<double>(&w)) return *s;
            throw SemanticError("distance function 'weight' needs scalar edge weights");
          }};
}

DistanceFunction euclidean_distance(std::string name) {
  return {std::move(name), DistanceDomain::real(), [](const Weight& w) {
            if (const double* s = std::get_if<double>(&w)) return std::abs(*s);
            const Vec2& v = std::get<Vec2>(w);
            return std::hypot(v.x, v.y);
          }};
}

DistanceRegistry DistanceRegistry::with_builtins() {
  DistanceRegistry r;
  r.add("hop", hop_distance());
  r.add("weight", weight_distance());
  r.add("euclid", euclidean_distance());
  return r;
}

void DistanceRegistry::add(const std::string& name, DistanceFunction f) {
  f.name = name;
  functions_.insert_or_assign(name, std::move(f));
}

const DistanceFunction* DistanceRegistry::find(const std::string& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

const DistanceFunction& DistanceRegistry::at(const std::string& name) const {
  if (const DistanceFunction* f = find(name)) return *f;
  throw SemanticError("unknown distance function '" + name + "'");
}

std::vector<std::string> DistanceRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, f] : functions_) out.push_back(name);
  return out;
}

DistanceFunction builtin_distance(const std::string& builtin, const std::string& name) {
  if (builtin == "hop") return hop_distance(name);
  if (builtin == "weight") return weight_distance(name);
  if (builtin == "euclid") return euclidean_distance(name);
  throw SemanticError("unknown builtin distance '" + builtin + "' (expected hop, weight or euclid)");
}

std::vector<Distance> edge_distances(const SpatialModel& m, const DistanceFunction& f) {
  std::vector<Distance> out;
  out.reserve(m.edge_count());
  for (const Edge& e : m.edges()) {
    Distance d = f(e.weight);
    if (!(d > f.domain.zero()) || !f.domain.contains(d))
      throw SemanticError("distance function '" + f.name + "' maps edge (" +
                          std::to_string(e.src) + ", " + std::to_string(e.dst) +
                          ") to " + std::to_string(d) + ", which is not strictly positive in the " +
                          std::string(f.domain.name()) + " domain");
    out.push_back(d);
  }
  return out;
}

std::vector<Distance> min_distances_from(const SpatialModel& m, std::span<const Distance> edge_dist,
                                         const DistanceDomain& domain, Location source) {
  std::vector<Distance> dist(m.location_count(), domain.infinity());
  using Item = std::pair<Distance, Location>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = domain.zero();
  heap.emplace(domain.zero(), source);
  while (!heap.empty()) {
    auto [d, l] = heap.top();
    heap.pop();
    if (d != dist[l]) continue;
    for (std::size_t ei : m.out_edges(l)) {
      Location next = m.edge(ei).dst;
      Distance nd = domain.add(d, edge_dist[ei]);
      if (domain.less(nd, dist[next])) {
        dist[next] = nd;
        heap.emplace(nd, next);
      }
    }
  }
  return dist;
}

DistanceMatrix min_distance_matrix(const SpatialModel& m, std::span<const Distance> edge_dist,
                                   const DistanceDomain& domain) {
  const std::size_t n = m.location_count();
  DistanceMatrix out(n, domain.infinity());
  for (Location s = 0; s < n; ++s) {
    std::vector<Distance> row = min_distances_from(m, edge_dist, domain, s);
    for (Location t = 0; t < n; ++t) out(s, t) = row[t];
  }
  return out;
}

DistanceMatrix min_distance_matrix(const SpatialModel& m, const DistanceFunction& f,
                                   const DistanceDomain& domain) {
  std::vector<Distance> ed = edge_distances(m, f);
  return min_distance_matrix(m, ed, domain);
}

DistanceMatrix min_distance_matrix(const SpatialModel& m, const DistanceFunction& f) {
  return min_distance_matrix(m, f, f.domain);
}

Distance route_prefix_distance(const SpatialModel& m, const DistanceFunction& f,
                               std::span<const Location> path, std::size_t i) {
  if (i > 0 && i >= path.size())
    throw SemanticError("prefix index " + std::to_string(i) + " exceeds the path length");
  Distance d = f.domain.zero();
  for (std::size_t k = 0; k < i; ++k) {
    std::optional<Weight> w = m.weight(path[k], path[k + 1]);
    if (!w)
      throw SemanticError("path step (" + std::to_string(path[k]) + ", " +
                          std::to_string(path[k + 1]) + ") is not an edge");
    d = f.domain.add(d, f(*w));
  }
  return d;
}

}  // namespace strel
