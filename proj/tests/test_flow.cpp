#include <doctest.h>

#include <random>

#include "optcast/flow.hpp"

using namespace optcast;

TEST_CASE("series bottleneck") {
  const std::vector<std::pair<NodeId, NodeId>> chain{{0, 1}, {1, 2}};
  OverlayGraph g = build_overlay(3, chain, 0);
  RateAllocation r(2);
  r << 3.0, 2.0;
  CutResult cut = min_cut(g, r, 2);
  CHECK(cut.value == doctest::Approx(2.0));
  CHECK(cut.source_side == std::vector<NodeId>{0, 1});
}

TEST_CASE("two disjoint paths") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  OverlayGraph g = build_overlay(4, edges, 0);
  RateAllocation r = RateAllocation::Ones(4);
  CHECK(min_cut(g, r, 3).value == doctest::Approx(2.0));
  CutResult bf = brute_force_min_cut(g, r, 3);
  CHECK(bf.value == doctest::Approx(2.0));
  CHECK(bf.source_side == std::vector<NodeId>{0});  // lexicographic witness
}

TEST_CASE("two-node graph cut equals the edge rate") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}};
  OverlayGraph g = build_overlay(2, edges, 0);
  RateAllocation r(1);
  r << 3.25;
  CHECK(brute_force_min_cut(g, r, 1).value == doctest::Approx(3.25));
}

TEST_CASE("argument validation") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}};
  OverlayGraph g = build_overlay(2, edges, 0);
  RateAllocation r = RateAllocation::Ones(1);
  CHECK_THROWS_AS(min_cut(g, r, 0), std::invalid_argument);
  CHECK_THROWS_AS(min_cut(g, RateAllocation::Ones(2), 1), DimensionMismatch);

  OverlayGraph big = gen_random_dag(17, 0.1, 5);
  CHECK_THROWS_AS(brute_force_min_cut(big, RateAllocation::Ones(big.edge_count()), 1), TooLarge);
}

TEST_CASE("max-flow equals exhaustive enumeration on random instances") {
  std::mt19937_64 rng(4321);
  std::uniform_real_distribution<double> unif(0.0, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);  // 3..10 nodes
    OverlayGraph g = gen_random_dag(n, 0.45, 1000 + trial);
    RateAllocation r(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) r[e] = unif(rng);
    for (NodeId v = 1; v < g.node_count(); ++v) {
      CutResult fast = min_cut(g, r, v);
      CutResult slow = brute_force_min_cut(g, r, v);
      CHECK(std::abs(fast.value - slow.value) <= 1e-9);
      // The witness itself must achieve the reported value.
      double crossing = 0.0;
      std::vector<char> in_u(static_cast<std::size_t>(g.node_count()), 0);
      for (NodeId x : fast.source_side) in_u[static_cast<std::size_t>(x)] = 1;
      CHECK(in_u[static_cast<std::size_t>(g.source())]);
      CHECK(!in_u[static_cast<std::size_t>(v)]);
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (in_u[static_cast<std::size_t>(g.edge(e).from)] &&
            !in_u[static_cast<std::size_t>(g.edge(e).to)])
          crossing += r[e];
      CHECK(crossing == doctest::Approx(fast.value).epsilon(1e-12));
    }
  }
}
