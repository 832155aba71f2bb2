#include "strel/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "strel/error.hpp"

namespace strel {

SpatialModel euclidean_model(std::span<const Vec2> pos, const Relation& relation) {
  std::vector<Edge> edges;
  edges.reserve(relation.size());
  for (auto [a, b] : relation) {
    if (a >= pos.size() || b >= pos.size())
      throw SemanticError("relation pair (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") references a location without a position");
    edges.push_back({a, b, pos[a] - pos[b]});
  }
  return SpatialModel(pos.size(), std::move(edges));
}

double orient2d(Vec2 a, Vec2 b, Vec2 c) noexcept {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

namespace {

int sign(long double v) { return (v > 0) - (v < 0); }

long double orient_ld(Vec2 a, Vec2 b, Vec2 c) {
  return (static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
         (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x);
}

}  // namespace

bool in_circumcircle(std::span<const Vec2> pos, Location a, Location b, Location c, Location d) {
  const std::array<Location, 4> row{a, b, c, d};
  const Vec2 pd = pos[d];
  long double m[3][3];
  for (int r = 0; r < 3; ++r) {
    long double dx = static_cast<long double>(pos[row[r]].x) - pd.x;
    long double dy = static_cast<long double>(pos[row[r]].y) - pd.y;
    m[r][0] = dx;
    m[r][1] = dy;
    m[r][2] = dx * dx + dy * dy;
  }
  long double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det != 0) return det > 0;
  // Lifting point row[r] by eps_r changes the determinant by eps_r times
  // (-1)^r orient(other three rows); the lowest id dominates.
  std::array<int, 4> by_id{0, 1, 2, 3};
  std::sort(by_id.begin(), by_id.end(), [&](int x, int y) { return row[x] < row[y]; });
  for (int r : by_id) {
    std::array<Vec2, 3> rest;
    int k = 0;
    for (int q = 0; q < 4; ++q)
      if (q != r) rest[k++] = pos[row[q]];
    int s = sign(orient_ld(rest[0], rest[1], rest[2]));
    if (s != 0) return (r % 2 == 0 ? s : -s) > 0;
  }
  return false;
}

namespace {

Relation symmetric(std::vector<LocationPair> pairs) {
  Relation out;
  out.reserve(pairs.size() * 2);
  for (auto [a, b] : pairs) {
    out.emplace_back(a, b);
    out.emplace_back(b, a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class Triangulation {
 public:
  Triangulation(std::span<const Vec2> pos) : pos_(pos), n_(pos.size()) {}

  void add(Location a, Location b, Location c) {
    third_[key(a, b)] = c;
    third_[key(b, c)] = a;
    third_[key(c, a)] = b;
  }

  void remove(Location a, Location b, Location c) {
    third_.erase(key(a, b));
    third_.erase(key(b, c));
    third_.erase(key(c, a));
  }

  // Lawson flips until every interior edge is locally Delaunay.
  void make_delaunay() {
    std::vector<LocationPair> stack;
    for (const auto& [k, c] : third_) stack.emplace_back(k / n_, k % n_);
    std::sort(stack.begin(), stack.end());
    // The lifted-point argument bounds the flip count by O(n^2); the cap only
    // guards against rounding making the predicate inconsistent.
    std::size_t budget = 16 * n_ * n_ + 1024;
    while (!stack.empty() && budget > 0) {
      auto [a, b] = stack.back();
      stack.pop_back();
      auto ic = third_.find(key(a, b));
      auto id = third_.find(key(b, a));
      if (ic == third_.end() || id == third_.end()) continue;
      Location c = ic->second;
      Location d = id->second;
      if (!in_circumcircle(pos_, a, b, c, d)) continue;
      if (!(orient2d(pos_[a], pos_[d], pos_[c]) > 0) || !(orient2d(pos_[d], pos_[b], pos_[c]) > 0))
        continue;
      remove(a, b, c);
      remove(b, a, d);
      add(a, d, c);
      add(d, b, c);
      stack.emplace_back(a, d);
      stack.emplace_back(d, b);
      stack.emplace_back(b, c);
      stack.emplace_back(c, a);
      --budget;
    }
  }

  std::vector<LocationPair> edges() const {
    std::vector<LocationPair> out;
    out.reserve(third_.size());
    for (const auto& [k, c] : third_) out.emplace_back(k / n_, k % n_);
    return out;
  }

 private:
  std::uint64_t key(Location a, Location b) const { return static_cast<std::uint64_t>(a) * n_ + b; }

  std::span<const Vec2> pos_;
  std::size_t n_;
  std::unordered_map<std::uint64_t, Location> third_;
};

}  // namespace

Relation delaunay_proximity(std::span<const Vec2> pos) {
  const std::size_t n = pos.size();
  for (const Vec2& p : pos)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw SemanticError("positions must have finite coordinates");
  if (n < 2) return {};

  std::vector<Location> order(n);
  for (Location i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Location a, Location b) {
    if (pos[a].x != pos[b].x) return pos[a].x < pos[b].x;
    if (pos[a].y != pos[b].y) return pos[a].y < pos[b].y;
    return a < b;
  });
  for (std::size_t i = 1; i < n; ++i)
    if (pos[order[i]] == pos[order[i - 1]])
      throw SemanticError("locations " + std::to_string(order[i - 1]) + " and " +
                          std::to_string(order[i]) + " share a position");

  // Leading run of collinear points in sweep order.
  std::size_t k = 2;
  while (k < n && orient2d(pos[order[0]], pos[order[1]], pos[order[k]]) == 0) ++k;
  if (k == n) {
    std::vector<LocationPair> chain;
    for (std::size_t i = 1; i < n; ++i) chain.emplace_back(order[i - 1], order[i]);
    return symmetric(std::move(chain));
  }

  Triangulation tri(pos);
  std::vector<Location> hull;
  const Location apex = order[k];
  const bool left = orient2d(pos[order[0]], pos[order[1]], pos[apex]) > 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (left)
      tri.add(order[i], order[i + 1], apex);
    else
      tri.add(order[i + 1], order[i], apex);
  }
  if (left) {
    for (std::size_t i = 0; i < k; ++i) hull.push_back(order[i]);
  } else {
    for (std::size_t i = k; i-- > 0;) hull.push_back(order[i]);
  }
  hull.push_back(apex);

  for (std::size_t s = k + 1; s < n; ++s) {
    const Location p = order[s];
    const std::size_t h = hull.size();
    std::vector<char> visible(h);
    for (std::size_t i = 0; i < h; ++i)
      visible[i] = orient2d(pos[hull[i]], pos[hull[(i + 1) % h]], pos[p]) < 0;
    std::size_t first = h;
    for (std::size_t i = 0; i < h; ++i)
      if (visible[i] && !visible[(i + h - 1) % h]) {
        first = i;
        break;
      }
    if (first == h) throw SemanticError("triangulation sweep found no visible hull edge");
    std::size_t last = first;
    while (visible[(last + 1) % h]) last = (last + 1) % h;
    for (std::size_t i = first;; i = (i + 1) % h) {
      tri.add(hull[(i + 1) % h], hull[i], p);
      if (i == last) break;
    }
    std::vector<Location> next;
    for (std::size_t i = (last + 1) % h;; i = (i + 1) % h) {
      next.push_back(hull[i]);
      if (i == first) break;
    }
    next.push_back(p);
    hull = std::move(next);
  }

  tri.make_delaunay();
  std::vector<LocationPair> pairs = tri.edges();
  return symmetric(std::move(pairs));
}

Relation connectivity_graph(std::span<const Vec2> pos, double radius) {
  std::vector<LocationPair> pairs;
  for (Location i = 0; i < pos.size(); ++i)
    for (Location j = i + 1; j < pos.size(); ++j)
      if (std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y) <= radius) pairs.emplace_back(i, j);
  return symmetric(std::move(pairs));
}

}  // namespace strel
