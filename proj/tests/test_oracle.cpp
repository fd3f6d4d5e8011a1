#include <doctest.h>

#include <random>

#include "optcast/experiments.hpp"
#include "optcast/flow.hpp"
#include "optcast/oracle.hpp"

using namespace optcast;

namespace {

OverlayGraph chain3() {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {1, 2}};
  return build_overlay(3, edges, 0);
}

}  // namespace

TEST_CASE("chain bottleneck through both formulations") {
  OverlayGraph g = chain3();
  CapacityModel m = edge_capacitated(g, {{0, 3.0}, {1, 2.0}});
  BroadcastRate cut = max_broadcast_rate_cut(g, m);
  BroadcastRate nb = max_broadcast_rate_neighbor(g, m);
  CHECK(cut.rate == doctest::Approx(2.0));
  CHECK(nb.rate == doctest::Approx(2.0));
  CHECK(feasible(cut.rates, m, 1e-7).feasible);
  CHECK(feasible(nb.rates, m, 1e-7).feasible);
}

TEST_CASE("unit diamond") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  OverlayGraph g = build_overlay(4, edges, 0);
  CapacityModel m = edge_capacitated(g, {{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}});
  CHECK(max_broadcast_rate_cut(g, m).rate == doctest::Approx(1.0));
  CHECK(max_broadcast_rate_neighbor(g, m).rate == doctest::Approx(1.0));
}

TEST_CASE("neighbor LP reproduces the grid optimum") {
  Scenario s1 = setting_one(5);
  CHECK(max_broadcast_rate_neighbor(s1.graph, s1.model).rate == doctest::Approx(2.0).epsilon(1e-6));
  Scenario s2 = setting_two(5);
  CHECK(max_broadcast_rate_neighbor(s2.graph, s2.model).rate == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("formulations agree on random instances") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> cap(0.1, 10.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);  // 2..8 nodes
    OverlayGraph g = gen_random_dag(n, 0.5, 500 + trial);

    CapacityModel m = [&]() {
      if (trial % 2 == 0) {
        std::map<EdgeId, double> caps;
        for (EdgeId e = 0; e < g.edge_count(); ++e) caps[e] = cap(rng);
        return edge_capacitated(g, caps);
      }
      std::map<NodeId, double> caps;
      for (NodeId v = 0; v < g.node_count(); ++v)
        if (!g.out_edges(v).empty()) caps[v] = cap(rng);
      return node_capacitated(g, caps);
    }();

    BroadcastRate cut = max_broadcast_rate_cut(g, m);
    BroadcastRate nb = max_broadcast_rate_neighbor(g, m);
    const double scale = std::max(1.0, std::abs(cut.rate));
    CHECK(std::abs(cut.rate - nb.rate) / scale <= 1e-6);

    // The optimizing allocation must support the rate on every receiver.
    for (const BroadcastRate& br : {cut, nb}) {
      CHECK(feasible(br.rates, m, 1e-6).feasible);
      for (NodeId v = 1; v < g.node_count(); ++v)
        CHECK(min_cut(g, br.rates, v).value >= br.rate - 1e-6);
    }
  }
}
