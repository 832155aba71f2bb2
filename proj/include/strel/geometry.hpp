#pragma once

#include <span>
#include <utility>
#include <vector>

#include "strel/space.hpp"

namespace strel {

using EuclideanPositions = std::vector<Vec2>;
using LocationPair = std::pair<Location, Location>;
/// A set of ordered location pairs, kept sorted and duplicate-free.
using Relation = std::vector<LocationPair>;

/// Edge (a, pos[a] - pos[b], b) for each (a, b) in `relation`.
SpatialModel euclidean_model(std::span<const Vec2> pos, const Relation& relation);

/// Twice the signed area of (a, b, c): positive when counter-clockwise.
double orient2d(Vec2 a, Vec2 b, Vec2 c) noexcept;

/// Whether pos[d] lies inside the circle through the counter-clockwise
/// triangle (a, b, c). Cocircular ties are broken by lifting each point
/// with an infinitesimal that is larger for lower ids, so the answer is
/// never "on the circle" unless all four points are collinear.
bool in_circumcircle(std::span<const Vec2> pos, Location a, Location b, Location c, Location d);

/// Symmetric relation of Delaunay edges. Fewer than two points give the empty
/// relation; all-collinear points give the chain of consecutive points.
/// Throws SemanticError on duplicate positions.
Relation delaunay_proximity(std::span<const Vec2> pos);

/// Symmetric relation of pairs at Euclidean distance <= radius.
Relation connectivity_graph(std::span<const Vec2> pos, double radius);

}  // namespace strel
