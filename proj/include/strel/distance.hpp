#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "strel/algebra.hpp"
#include "strel/space.hpp"

namespace strel {

/// A named map from edge weights into a distance domain.
struct DistanceFunction {
  std::string name;
  DistanceDomain domain = DistanceDomain::hop();
  std::function<Distance(const Weight&)> map;

  Distance operator()(const Weight& w) const { return map(w); }
};

/// Every edge counts 1 (hop domain).
DistanceFunction hop_distance(std::string name = "hop");
/// Scalar edge weights summed along routes; vector weights are rejected.
DistanceFunction weight_distance(std::string name = "weight");
/// Euclidean norm of vector weights; scalar weights contribute their magnitude.
DistanceFunction euclidean_distance(std::string name = "euclid");

/// Name -> distance function lookup used to resolve formulas.
class DistanceRegistry {
 public:
  DistanceRegistry() = default;
  /// A registry holding hop, weight and euclid.
  static DistanceRegistry with_builtins();

  /// Adds or replaces the function under `name` (the stored copy is renamed).
  void add(const std::string& name, DistanceFunction f);
  const DistanceFunction* find(const std::string& name) const;
  /// Throws SemanticError when `name` is unknown.
  const DistanceFunction& at(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, DistanceFunction> functions_;
};

/// The builtin whose CLI binding is `builtin` (hop | weight | euclid), renamed.
DistanceFunction builtin_distance(const std::string& builtin, const std::string& name);

/// f applied to every edge of `m`, in edge order. Throws SemanticError when
/// some value is not strictly above zero or lies outside f's domain.
std::vector<Distance> edge_distances(const SpatialModel& m, const DistanceFunction& f);

/// Dense n x n matrix of distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, Distance fill) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  Distance& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  Distance operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const Distance> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<Distance> data_;
};

/// Single-source minimum route distance over out-edges; unreachable -> infinity.
std::vector<Distance> min_distances_from(const SpatialModel& m, std::span<const Distance> edge_dist,
                                         const DistanceDomain& domain, Location source);

/// All-pairs minimum route distance, one Dijkstra run per source.
DistanceMatrix min_distance_matrix(const SpatialModel& m, std::span<const Distance> edge_dist,
                                   const DistanceDomain& domain);
DistanceMatrix min_distance_matrix(const SpatialModel& m, const DistanceFunction& f,
                                   const DistanceDomain& domain);
DistanceMatrix min_distance_matrix(const SpatialModel& m, const DistanceFunction& f);

/// Accumulated distance of the first `i` steps of `path`.
Distance route_prefix_distance(const SpatialModel& m, const DistanceFunction& f,
                               std::span<const Location> path, std::size_t i);

}  // namespace strel
