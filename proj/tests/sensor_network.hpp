#pragma once

// The sixteen-node sensor network used by the spatial property examples:
// one coordinator, six routers and nine end devices. Locations are numbered
// 1..16 in the text; here they are 0-based.

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "strel/interpretation.hpp"
#include "strel/signal.hpp"
#include "strel/space.hpp"

namespace strel::testing {

struct SensorNetwork {
  DynamicalSpatialModel model;
  Trace trace;
  AtomicInterpretation interpretation{{"end_dev", "router", "coord"}};
};

/// 1-based ids, as in the text.
inline constexpr std::array<std::pair<int, int>, 18> sensor_links{{
    {1, 8}, {2, 7}, {8, 6}, {8, 7}, {7, 10}, {7, 5}, {3, 10}, {6, 5}, {10, 11},
    {10, 9}, {11, 15}, {11, 12}, {9, 14}, {10, 14}, {10, 16}, {11, 16}, {13, 16}, {8, 4},
}};

inline SensorNetwork sensor_network() {
  std::vector<Edge> edges;
  for (auto [a, b] : sensor_links)
    edges.push_back({static_cast<Location>(a - 1), static_cast<Location>(b - 1), 1.0});
  SpatialModel m(16, undirected_edges(edges));
  const std::vector<int> routers{5, 7, 8, 9, 11, 16};
  std::vector<TemporalSignal<Trace::Sample>> per;
  for (int id = 1; id <= 16; ++id) {
    bool router = std::find(routers.begin(), routers.end(), id) != routers.end();
    bool coord = id == 10;
    Trace::Sample x{router || coord ? 0.0 : 1.0, router ? 1.0 : 0.0, coord ? 1.0 : 0.0};
    per.push_back(TemporalSignal<Trace::Sample>::constant(x, 0, 1));
  }
  return {DynamicalSpatialModel::constant(std::move(m)),
          Trace({"end_dev", "router", "coord"}, std::move(per)),
          AtomicInterpretation({"end_dev", "router", "coord"})};
}

}  // namespace strel::testing
