#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace strel {

using Location = std::size_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }

/// An edge label: a scalar, or the displacement vector of a Euclidean model.
using Weight = std::variant<double, Vec2>;

struct Edge {
  Location src = 0;
  Location dst = 0;
  Weight weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Expands each edge into itself and its reverse with the same weight.
std::vector<Edge> undirected_edges(std::span<const Edge> edges);

/// A weighted directed graph over locations 0..n-1 with at most one edge per
/// ordered pair and no self-loops.
class SpatialModel {
 public:
  SpatialModel() = default;

  /// Throws SemanticError on out-of-range ids, self-loops or a duplicate
  /// ordered pair (the message names the pair).
  SpatialModel(std::size_t location_count, std::vector<Edge> edges);

  std::size_t location_count() const noexcept { return location_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  /// Indices of the edges l' -> l arriving at `l`.
  std::span<const std::size_t> in_edges(Location l) const;
  /// Indices of the edges l -> l' leaving `l`.
  std::span<const std::size_t> out_edges(Location l) const;

  std::optional<Weight> weight(Location src, Location dst) const;
  bool has_edge(Location src, Location dst) const { return weight(src, dst).has_value(); }

  friend bool operator==(const SpatialModel& a, const SpatialModel& b) {
    return a.location_count_ == b.location_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t location_count_ = 0;
  std::vector<Edge> edges_;  // sorted by (src, dst)
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<std::size_t> in_index_;
  std::vector<std::size_t> out_index_;
};

SpatialModel build_spatial_model(std::size_t location_count, std::vector<Edge> edges);

/// Piecewise-constant evolution of a spatial model: snapshot i is in force on
/// [time_i, time_{i+1}).
class DynamicalSpatialModel {
 public:
  struct Snapshot {
    double time = 0.0;
    SpatialModel model;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
  };

  DynamicalSpatialModel() = default;
  /// Times must be strictly increasing and all snapshots must share the
  /// location count.
  explicit DynamicalSpatialModel(std::vector<Snapshot> snapshots);
  /// A static model, in force from time 0 onwards.
  static DynamicalSpatialModel constant(SpatialModel model, double time = 0.0);

  std::size_t location_count() const noexcept { return location_count_; }
  std::size_t snapshot_count() const noexcept { return snapshots_.size(); }
  const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }
  std::vector<double> times() const;

  /// Index of the latest snapshot whose time is <= t.
  std::size_t index_at(double t) const;
  const SpatialModel& snapshot_at(double t) const { return snapshots_[index_at(t)].model; }

  friend bool operator==(const DynamicalSpatialModel&, const DynamicalSpatialModel&) = default;

 private:
  std::size_t location_count_ = 0;
  std::vector<Snapshot> snapshots_;
};

const SpatialModel& snapshot_at(const DynamicalSpatialModel& model, double t);

}  // namespace strel
