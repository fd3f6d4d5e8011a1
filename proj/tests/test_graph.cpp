#include <doctest.h>

#include <algorithm>
#include <set>

#include "optcast/graph.hpp"

using namespace optcast;

namespace {

std::vector<std::pair<NodeId, NodeId>> diamond_edges() {
  return {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
}

}  // namespace

TEST_CASE("two-node overlay") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}};
  OverlayGraph g = build_overlay(2, edges, 0);
  CHECK(g.in_neighbors(1) == std::vector<NodeId>{0});
  CHECK(g.out_neighbors(0) == std::vector<NodeId>{1});
  CHECK(g.in_edges(0).empty());
}

TEST_CASE("three-cycle rejected") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(build_overlay(3, edges, 0), CycleDetected);
}

TEST_CASE("diamond adjacency") {
  const auto edges = diamond_edges();
  OverlayGraph g = build_overlay(4, edges, 0);
  CHECK(g.in_neighbors(3) == std::vector<NodeId>{1, 2});
  CHECK(g.edge_count() == 4);
}

TEST_CASE("construction errors") {
  const std::vector<std::pair<NodeId, NodeId>> dup{{0, 1}, {0, 1}};
  CHECK_THROWS_AS(build_overlay(2, dup, 0), DuplicateEdge);

  const std::vector<std::pair<NodeId, NodeId>> into_source{{0, 1}};
  CHECK_THROWS_AS(build_overlay(2, into_source, 1), SourceHasInEdges);

  const std::vector<std::pair<NodeId, NodeId>> partial{{0, 1}};
  CHECK_THROWS_AS(build_overlay(3, partial, 0), UnreachableReceiver);

  const std::vector<std::pair<NodeId, NodeId>> oob{{0, 7}};
  CHECK_THROWS_AS(build_overlay(2, oob, 0), std::out_of_range);
}

TEST_CASE("topological index on fixed graphs") {
  OverlayGraph diamond = build_overlay(4, diamond_edges(), 0);
  IndexAssignment idx = topological_index(diamond);
  CHECK(idx.index_of == std::vector<int>{0, 1, 2, 3});

  const std::vector<std::pair<NodeId, NodeId>> chain{{0, 1}, {1, 2}};
  IndexAssignment cidx = topological_index(build_overlay(3, chain, 0));
  CHECK(cidx.index_of == std::vector<int>{0, 1, 2});
}

TEST_CASE("topological index is an ascending permutation on random DAGs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    OverlayGraph g = gen_random_dag(2 + static_cast<int>(seed % 9), 0.4, seed);
    IndexAssignment idx = topological_index(g);
    CHECK(idx.index_of[g.source()] == 0);
    std::set<int> values(idx.index_of.begin(), idx.index_of.end());
    CHECK(static_cast<int>(values.size()) == g.node_count());
    CHECK(*values.begin() == 0);
    CHECK(*values.rbegin() == g.node_count() - 1);
    for (const Edge& e : g.edges()) CHECK(idx.index_of[e.from] < idx.index_of[e.to]);
    for (int i = 0; i < g.node_count(); ++i) CHECK(idx.index_of[idx.node_at[i]] == i);
  }
}

TEST_CASE("3x3 grid matches the hand enumeration") {
  Grid grid = gen_grid(3);
  CHECK(grid.graph.node_count() == 9);
  CHECK(grid.graph.edge_count() == 12);
  CHECK(grid.graph.source() == 4);
  CHECK(grid.layout.top_left() == 0);
  CHECK(grid.layout.center() == 4);

  const std::set<std::pair<NodeId, NodeId>> expected{{4, 1}, {4, 3}, {4, 5}, {4, 7},
                                                     {1, 0}, {1, 2}, {3, 0}, {3, 6},
                                                     {5, 2}, {5, 8}, {7, 6}, {7, 8}};
  std::set<std::pair<NodeId, NodeId>> actual;
  for (const Edge& e : grid.graph.edges()) actual.insert({e.from, e.to});
  CHECK(actual == expected);

  CHECK(grid.graph.in_neighbors(0) == std::vector<NodeId>{1, 3});
}

TEST_CASE("grid sizes and orientation") {
  Grid g5 = gen_grid(5);
  CHECK(g5.graph.node_count() == 25);
  CHECK(g5.graph.edge_count() == 40);

  const int c = 2;
  for (const Edge& e : g5.graph.edges()) {
    auto [fr, fc] = g5.layout.coord_of(e.from);
    auto [tr, tc] = g5.layout.coord_of(e.to);
    CHECK(std::abs(fr - c) + std::abs(fc - c) < std::abs(tr - c) + std::abs(tc - c));
  }

  CHECK_THROWS_AS(gen_grid(4), InvalidSide);
  CHECK_THROWS_AS(gen_grid(1), InvalidSide);
}

TEST_CASE("random DAG generator") {
  OverlayGraph chain = gen_random_dag(2, 0.0, 99);
  CHECK(chain.edge_count() == 1);
  CHECK(chain.has_edge(0, 1));

  OverlayGraph full = gen_random_dag(5, 1.0, 3);
  CHECK(full.edge_count() == 10);

  OverlayGraph a = gen_random_dag(8, 0.4, 7);
  OverlayGraph b = gen_random_dag(8, 0.4, 7);
  REQUIRE(a.edge_count() == b.edge_count());
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    CHECK(a.edge(e).from == b.edge(e).from);
    CHECK(a.edge(e).to == b.edge(e).to);
  }
}

TEST_CASE("adjacency views agree with the edge list") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    OverlayGraph g = gen_random_dag(7, 0.5, seed);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      auto out = g.out_edges(ed.from);
      auto in = g.in_edges(ed.to);
      CHECK(std::find(out.begin(), out.end(), e) != out.end());
      CHECK(std::find(in.begin(), in.end(), e) != in.end());
    }
    int adjacency_total = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
      adjacency_total += static_cast<int>(g.out_edges(v).size());
    CHECK(adjacency_total == g.edge_count());
  }
}
