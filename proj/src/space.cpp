#include "strel/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "strel/error.hpp"

namespace strel {

std::vector<Edge> undirected_edges(std::span<const Edge> edges) {
  std::vector<Edge> out;
  out.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    out.push_back(e);
    out.push_back({e.dst, e.src, e.weight});
  }
  return out;
}

namespace {

std::string pair_name(Location a, Location b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

bool finite_weight(const Weight& w) {
  if (const double* s = std::get_if<double>(&w)) return std::isfinite(*s);
  const Vec2& v = std::get<Vec2>(w);
  return std::isfinite(v.x) && std::isfinite(v.y);
}

// Counting sort of edge indices by `key`, returning offsets and the index list.
template <class Key>
void bucket(std::size_t n, const std::vector<Edge>& edges, Key key,
            std::vector<std::size_t>& offsets, std::vector<std::size_t>& index) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++offsets[key(e) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  index.assign(edges.size(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) index[cursor[key(edges[i])]++] = i;
}

}  // namespace

SpatialModel::SpatialModel(std::size_t location_count, std::vector<Edge> edges)
    : location_count_(location_count), edges_(std::move(edges)) {
  if (location_count_ == 0) throw SemanticError("spatial model needs at least one location");
  for (const Edge& e : edges_) {
    if (e.src >= location_count_ || e.dst >= location_count_)
      throw SemanticError("edge " + pair_name(e.src, e.dst) + " references a location outside 0.." +
                          std::to_string(location_count_ - 1));
    if (e.src == e.dst) throw SemanticError("self-loop at location " + std::to_string(e.src));
    if (!finite_weight(e.weight))
      throw SemanticError("edge " + pair_name(e.src, e.dst) + " has a non-finite weight");
  }
  std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].src == edges_[i - 1].src && edges_[i].dst == edges_[i - 1].dst)
      throw SemanticError("duplicate edge " + pair_name(edges_[i].src, edges_[i].dst));
  }
  bucket(location_count_, edges_, [](const Edge& e) { return e.src; }, out_offsets_, out_index_);
  bucket(location_count_, edges_, [](const Edge& e) { return e.dst; }, in_offsets_, in_index_);
}

std::span<const std::size_t> SpatialModel::in_edges(Location l) const {
  if (l >= location_count_) throw SemanticError("location " + std::to_string(l) + " out of range");
  return {in_index_.data() + in_offsets_[l], in_offsets_[l + 1] - in_offsets_[l]};
}

std::span<const std::size_t> SpatialModel::out_edges(Location l) const {
  if (l >= location_count_) throw SemanticError("location " + std::to_string(l) + " out of range");
  return {out_index_.data() + out_offsets_[l], out_offsets_[l + 1] - out_offsets_[l]};
}

std::optional<Weight> SpatialModel::weight(Location src, Location dst) const {
  if (src >= location_count_ || dst >= location_count_) return std::nullopt;
  auto first = edges_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[src]);
  auto last = edges_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[src + 1]);
  auto it = std::lower_bound(first, last, dst, [](const Edge& e, Location d) { return e.dst < d; });
  if (it == last || it->dst != dst) return std::nullopt;
  return it->weight;
}

SpatialModel build_spatial_model(std::size_t location_count, std::vector<Edge> edges) {
  return SpatialModel(location_count, std::move(edges));
}

DynamicalSpatialModel::DynamicalSpatialModel(std::vector<Snapshot> snapshots)
    : snapshots_(std::move(snapshots)) {
  if (snapshots_.empty()) throw SemanticError("dynamical spatial model needs at least one snapshot");
  location_count_ = snapshots_.front().model.location_count();
  for (std::size_t i = 0; i < snapshots_.size(); ++i) {
    if (!std::isfinite(snapshots_[i].time))
      throw SemanticError("snapshot " + std::to_string(i) + " has a non-finite time");
    if (snapshots_[i].model.location_count() != location_count_)
      throw SemanticError("snapshot " + std::to_string(i) + " has " +
                          std::to_string(snapshots_[i].model.location_count()) +
                          " locations, expected " + std::to_string(location_count_));
    if (i > 0 && !(snapshots_[i - 1].time < snapshots_[i].time))
      throw SemanticError("snapshot times must be strictly increasing (snapshot " +
                          std::to_string(i) + ")");
  }
}

DynamicalSpatialModel DynamicalSpatialModel::constant(SpatialModel model, double time) {
  std::vector<Snapshot> s;
  s.push_back({time, std::move(model)});
  return DynamicalSpatialModel(std::move(s));
}

std::vector<double> DynamicalSpatialModel::times() const {
  std::vector<double> out;
  out.reserve(snapshots_.size());
  for (const Snapshot& s : snapshots_) out.push_back(s.time);
  return out;
}

std::size_t DynamicalSpatialModel::index_at(double t) const {
  if (snapshots_.empty()) throw SemanticError("empty dynamical spatial model");
  if (!(t >= snapshots_.front().time))
    throw SemanticError("time " + std::to_string(t) + " precedes the first snapshot");
  auto it = std::upper_bound(snapshots_.begin(), snapshots_.end(), t,
                             [](double v, const Snapshot& s) { return v < s.time; });
  return static_cast<std::size_t>(it - snapshots_.begin()) - 1;
}

const SpatialModel& snapshot_at(const DynamicalSpatialModel& model, double t) {
  return model.snapshot_at(t);
}

}  // namespace strel
