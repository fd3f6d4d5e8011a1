#include <doctest.h>

#include <random>

#include "optcast/capacity.hpp"
#include "optcast/graph.hpp"

using namespace optcast;

namespace {

OverlayGraph fan_out() {
  // 0 -> 1, 0 -> 2
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {0, 2}};
  return build_overlay(3, edges, 0);
}

}  // namespace

TEST_CASE("node capacity row sums a node's outgoing rates") {
  OverlayGraph g = fan_out();
  CapacityModel m = node_capacitated(g, {{0, 5.0}});
  CHECK(m.constraint_count() == 1);  // sinks get no row
  CHECK(m.kind() == CapacityKind::NodeCap);

  RateAllocation r(2);
  r << 3.0, 2.0;
  CHECK(feasible(r, m, 1e-9).feasible);
  r << 3.0, 2.5;
  auto res = feasible(r, m, 1e-9);
  CHECK(!res.feasible);
  CHECK(res.max_violation == doctest::Approx(0.5));
}

TEST_CASE("node capacity errors") {
  OverlayGraph g = fan_out();
  CHECK_THROWS_AS(node_capacitated(g, {}), MissingCapacity);
  CHECK_THROWS_AS(node_capacitated(g, {{0, -1.0}}), NonpositiveCapacity);
}

TEST_CASE("edge capacities form an identity model") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  OverlayGraph g = build_overlay(4, edges, 0);
  CapacityModel m = edge_capacitated(g, {{0, 1.0}, {1, 2.0}, {2, 3.0}, {3, 4.0}});
  CHECK(m.constraint_count() == 4);
  Eigen::MatrixXd dense = Eigen::MatrixXd(m.rows());
  CHECK(dense.isApprox(Eigen::MatrixXd::Identity(4, 4)));
  Vec expected(4);
  expected << 1, 2, 3, 4;
  CHECK(m.bounds().isApprox(expected));

  CHECK_THROWS_AS(edge_capacitated(g, {{0, 1.0}}), MissingCapacity);
  CHECK_THROWS_AS(edge_capacitated(g, {{0, 0.0}, {1, 2.0}, {2, 3.0}, {3, 4.0}}),
                  NonpositiveCapacity);
}

TEST_CASE("single edge bound") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}};
  OverlayGraph g = build_overlay(2, edges, 0);
  CapacityModel m = edge_capacitated(g, {{0, 4.0}});
  RateAllocation r(1);
  r << 5.0;
  auto res = feasible(r, m, 1e-9);
  CHECK(!res.feasible);
  CHECK(res.max_violation == doctest::Approx(1.0));
  CHECK(feasible(RateAllocation::Zero(1), m, 0.0).feasible);
  CHECK(feasible(RateAllocation::Zero(1), m, 0.0).max_violation == 0.0);
}

TEST_CASE("shared physical link sums every overlay edge crossing it") {
  // s -> u, s -> v, v -> u, v -> w; edges (s,u), (v,u), (v,w) share link 0.
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {0, 2}, {2, 1}, {2, 3}};
  OverlayGraph g = build_overlay(4, edges, 0);
  std::map<EdgeId, std::vector<long>> routes{{0, {0}}, {1, {1}}, {2, {0}}, {3, {0}}};
  CapacityModel m = physical_link_model(g, routes, {{0, 6.0}, {1, 9.0}});
  CHECK(m.constraint_count() == 2);
  CHECK(m.kind() == CapacityKind::PhysicalLink);

  RateAllocation r(4);
  r << 2.0, 8.0, 2.0, 2.0;  // link 0 carries 2+2+2, link 1 carries 8
  CHECK(feasible(r, m, 1e-9).feasible);
  r << 2.0, 8.0, 2.0, 2.5;
  auto res = feasible(r, m, 1e-9);
  CHECK(!res.feasible);
  CHECK(res.max_violation == doctest::Approx(0.5));

  std::map<EdgeId, std::vector<long>> unrouted{{0, {0}}, {1, {1}}, {2, {0}}};
  CHECK_THROWS_AS(physical_link_model(g, unrouted, {{0, 6.0}, {1, 9.0}}), UnroutedEdge);
}

TEST_CASE("disjoint routes reduce to per-edge bounds") {
  const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {1, 2}};
  OverlayGraph g = build_overlay(3, edges, 0);
  CapacityModel m =
      physical_link_model(g, {{0, {10}}, {1, {20}}}, {{10, 3.0}, {20, 2.0}});
  RateAllocation r(2);
  r << 3.0, 2.0;
  CHECK(feasible(r, m, 1e-9).feasible);
  r << 3.0 + 1e-3, 2.0;
  CHECK(!feasible(r, m, 1e-9).feasible);
}

TEST_CASE("feasibility rejects mismatched dimensions") {
  OverlayGraph g = fan_out();
  CapacityModel m = node_capacitated(g, {{0, 5.0}});
  CHECK_THROWS_AS(feasible(RateAllocation::Zero(3), m, 0.0), DimensionMismatch);
}

TEST_CASE("uncovered edges are rejected at construction") {
  std::vector<Eigen::Triplet<double>> entries{{0, 0, 1.0}};
  Vec bounds(1);
  bounds << 2.0;
  CHECK_THROWS_AS(CapacityModel(CapacityKind::General, 2, entries, bounds, {0}),
                  std::invalid_argument);
}

TEST_CASE("node model matches direct per-node sums on random inputs") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    OverlayGraph g = gen_random_dag(6, 0.6, trial);
    std::map<NodeId, double> caps;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (!g.out_edges(v).empty()) caps[v] = 1.0 + unif(rng);
    CapacityModel m = node_capacitated(g, caps);

    RateAllocation r(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) r[e] = unif(rng);

    bool direct_ok = true;
    double direct_violation = 0.0;
    for (auto& [v, cap] : caps) {
      double total = 0.0;
      for (EdgeId e : g.out_edges(v)) total += r[e];
      direct_ok = direct_ok && total <= cap + 1e-9;
      direct_violation = std::max(direct_violation, total - cap);
    }
    auto res = feasible(r, m, 1e-9);
    CHECK(res.feasible == direct_ok);
    CHECK(res.max_violation == doctest::Approx(std::max(0.0, direct_violation)));
  }
}

TEST_CASE("edge model feasibility is componentwise") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    OverlayGraph g = gen_random_dag(6, 0.5, 100 + trial);
    std::map<EdgeId, double> caps;
    for (EdgeId e = 0; e < g.edge_count(); ++e) caps[e] = unif(rng);
    CapacityModel m = edge_capacitated(g, caps);
    RateAllocation r(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) r[e] = unif(rng);
    bool comp = true;
    for (EdgeId e = 0; e < g.edge_count(); ++e) comp = comp && r[e] <= caps[e] + 1e-9;
    CHECK(feasible(r, m, 1e-9).feasible == comp);
  }
}
