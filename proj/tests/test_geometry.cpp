#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "strel/distance.hpp"
#include "strel/error.hpp"
#include "strel/geometry.hpp"
#include "support.hpp"

using namespace strel;
using namespace strel::testing;

namespace {

std::set<LocationPair> undirected(const Relation& r) {
  std::set<LocationPair> out;
  for (auto [a, b] : r) out.emplace(std::min(a, b), std::max(a, b));
  return out;
}

bool is_symmetric(const Relation& r) {
  std::set<LocationPair> s(r.begin(), r.end());
  return std::all_of(r.begin(), r.end(), [&](const LocationPair& p) { return s.count({p.second, p.first}) == 1; });
}

// Edges of triangles whose (perturbed) circumcircle contains no other point.
std::set<LocationPair> brute_force_delaunay(const std::vector<Vec2>& pos) {
  const std::size_t n = pos.size();
  std::set<LocationPair> out;
  for (Location i = 0; i < n; ++i)
    for (Location j = i + 1; j < n; ++j)
      for (Location k = j + 1; k < n; ++k) {
        double o = orient2d(pos[i], pos[j], pos[k]);
        if (o == 0) continue;
        Location a = i, b = o > 0 ? j : k, c = o > 0 ? k : j;
        bool empty = true;
        for (Location l = 0; l < n && empty; ++l)
          if (l != a && l != b && l != c && in_circumcircle(pos, a, b, c, l)) empty = false;
        if (empty) {
          out.emplace(i, j);
          out.emplace(j, k);
          out.emplace(i, k);
        }
      }
  return out;
}

std::vector<Vec2> random_points(Rng& rng, std::size_t n, bool lattice) {
  std::vector<Vec2> pts;
  std::set<std::pair<double, double>> used;
  std::uniform_real_distribution<double> u(0, 100);
  while (pts.size() < n) {
    Vec2 p = lattice ? Vec2{double(uniform_int(rng, 0, 5)), double(uniform_int(rng, 0, 5))} : Vec2{u(rng), u(rng)};
    if (used.emplace(p.x, p.y).second) pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("euclidean model edges carry displacement vectors") {
  std::vector<Vec2> pos{{0, 0}, {3, 4}};
  SpatialModel m = euclidean_model(pos, {{0, 1}});
  Vec2 w = std::get<Vec2>(*m.weight(0, 1));
  CHECK(w == Vec2{-3, -4});
  CHECK(euclidean_distance()(*m.weight(0, 1)) == 5.0);

  std::vector<Vec2> same{{1, 1}, {1, 1}};
  SpatialModel z = euclidean_model(same, {{0, 1}});
  CHECK_THROWS_AS(edge_distances(z, euclidean_distance()), SemanticError);

  std::vector<Vec2> moved{{10, 10}, {13, 14}};
  CHECK(euclidean_model(moved, {{0, 1}}) == m);
  CHECK_THROWS_AS(euclidean_model(pos, {{0, 2}}), SemanticError);
}

TEST_CASE("delaunay small configurations") {
  CHECK(delaunay_proximity(std::vector<Vec2>{}).empty());
  CHECK(delaunay_proximity(std::vector<Vec2>{{1, 2}}).empty());
  CHECK(delaunay_proximity(std::vector<Vec2>{{0, 0}, {5, 1}}) == Relation{{0, 1}, {1, 0}});

  Relation tri = delaunay_proximity(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}});
  CHECK(undirected(tri) == std::set<LocationPair>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(is_symmetric(tri));

  std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::set<LocationPair> sq = undirected(delaunay_proximity(square));
  CHECK(sq.size() == 5);
  for (LocationPair side : {LocationPair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) CHECK(sq.count(side) == 1);
  CHECK(sq == brute_force_delaunay(square));

  std::vector<Vec2> line{{3, 3}, {0, 0}, {2, 2}, {1, 1}};
  CHECK(undirected(delaunay_proximity(line)) == std::set<LocationPair>{{1, 3}, {2, 3}, {0, 2}});

  CHECK_THROWS_AS(delaunay_proximity(std::vector<Vec2>{{0, 0}, {1, 1}, {0, 0}}), SemanticError);
}

TEST_CASE("delaunay matches the empty-circle oracle") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    bool lattice = trial % 2 == 0;
    std::size_t n = static_cast<std::size_t>(uniform_int(rng, 3, lattice ? 20 : 30));
    std::vector<Vec2> pts = random_points(rng, n, lattice);
    bool all_collinear = true;
    for (std::size_t k = 2; k < n; ++k)
      if (orient2d(pts[0], pts[1], pts[k]) != 0) all_collinear = false;
    if (all_collinear) continue;
    Relation r = delaunay_proximity(pts);
    CHECK(is_symmetric(r));
    CHECK(undirected(r) == brute_force_delaunay(pts));
  }
}

TEST_CASE("delaunay with collinear points on the hull") {
  std::vector<Vec2> pts{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1.5, 2}};
  CHECK(undirected(delaunay_proximity(pts)) == brute_force_delaunay(pts));
  std::vector<Vec2> col{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1.5}, {-1, 1.5}};
  CHECK(undirected(delaunay_proximity(col)) == brute_force_delaunay(col));
}

TEST_CASE("delaunay is invariant under translation") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> pts = random_points(rng, 15, true);
    std::vector<Vec2> moved;
    for (Vec2 p : pts) moved.push_back({p.x + 7, p.y - 3});
    CHECK(delaunay_proximity(pts) == delaunay_proximity(moved));
  }
}

TEST_CASE("connectivity graph") {
  std::vector<Vec2> pts{{0, 0}, {3, 4}, {10, 10}};
  CHECK(connectivity_graph(pts, 0).empty());
  CHECK(connectivity_graph(pts, 5) == Relation{{0, 1}, {1, 0}});

  Rng rng(17);
  std::vector<Vec2> cloud = random_points(rng, 10, false);
  Relation prev;
  for (double r = 0; r <= 150; r += 5) {
    Relation cur = connectivity_graph(cloud, r);
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    for (Location i = 0; i < cloud.size(); ++i)
      for (Location j = 0; j < cloud.size(); ++j) {
        bool expect = i != j && std::hypot(cloud[i].x - cloud[j].x, cloud[i].y - cloud[j].y) <= r;
        CHECK(std::binary_search(cur.begin(), cur.end(), LocationPair{i, j}) == expect);
      }
    prev = cur;
  }
}
