#include "optcast/graph.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <string>

namespace optcast {

OverlayGraph::OverlayGraph(int node_count,
                           std::span<const std::pair<NodeId, NodeId>> edge_pairs,
                           NodeId source)
    : node_count_(node_count), source_(source) {
  if (node_count < 1) throw std::invalid_argument("node_count must be >= 1");
  if (source < 0 || source >= node_count) throw std::invalid_argument("source out of range");

  edges_.reserve(edge_pairs.size());
  in_.resize(static_cast<std::size_t>(node_count));
  out_.resize(static_cast<std::size_t>(node_count));

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& [u, v] : edge_pairs) {
    if (u < 0 || u >= node_count || v < 0 || v >= node_count)
      throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop edge " + std::to_string(u));
    if (!seen.insert({u, v}).second)
      throw DuplicateEdge("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v});
    out_[static_cast<std::size_t>(u)].push_back(id);
    in_[static_cast<std::size_t>(v)].push_back(id);
  }

  // Kahn pass detects cycles before the source/reachability checks so that a
  // cyclic input reports CycleDetected even when it also feeds the source.
  {
    std::vector<int> indeg(static_cast<std::size_t>(node_count));
    for (NodeId v = 0; v < node_count; ++v)
      indeg[static_cast<std::size_t>(v)] = static_cast<int>(in_[static_cast<std::size_t>(v)].size());
    std::vector<NodeId> stack;
    for (NodeId v = 0; v < node_count; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    int visited = 0;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++visited;
      for (EdgeId e : out_[static_cast<std::size_t>(v)])
        if (--indeg[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].to)] == 0)
          stack.push_back(edges_[static_cast<std::size_t>(e)].to);
    }
    if (visited != node_count) throw CycleDetected("overlay contains a directed cycle");
  }

  if (!in_[static_cast<std::size_t>(source)].empty())
    throw SourceHasInEdges("source " + std::to_string(source) + " has incoming edges");

  {
    std::vector<char> reached(static_cast<std::size_t>(node_count), 0);
    std::queue<NodeId> q;
    reached[static_cast<std::size_t>(source)] = 1;
    q.push(source);
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      for (EdgeId e : out_[static_cast<std::size_t>(v)]) {
        NodeId w = edges_[static_cast<std::size_t>(e)].to;
        if (!reached[static_cast<std::size_t>(w)]) {
          reached[static_cast<std::size_t>(w)] = 1;
          q.push(w);
        }
      }
    }
    for (NodeId v = 0; v < node_count; ++v)
      if (!reached[static_cast<std::size_t>(v)])
        throw UnreachableReceiver("node " + std::to_string(v) + " is unreachable from the source");
  }
}

std::vector<NodeId> OverlayGraph::in_neighbors(NodeId v) const {
  std::vector<NodeId> r;
  r.reserve(in_edges(v).size());
  for (EdgeId e : in_edges(v)) r.push_back(edge(e).from);
  return r;
}

std::vector<NodeId> OverlayGraph::out_neighbors(NodeId v) const {
  std::vector<NodeId> r;
  r.reserve(out_edges(v).size());
  for (EdgeId e : out_edges(v)) r.push_back(edge(e).to);
  return r;
}

bool OverlayGraph::has_edge(NodeId from, NodeId to) const {
  for (EdgeId e : out_edges(from))
    if (edge(e).to == to) return true;
  return false;
}

OverlayGraph build_overlay(int node_count,
                           std::span<const std::pair<NodeId, NodeId>> edges,
                           NodeId source) {
  return OverlayGraph(node_count, edges, source);
}

IndexAssignment topological_index(const OverlayGraph& g) {
  const int n = g.node_count();
  std::vector<int> indeg(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v)
    indeg[static_cast<std::size_t>(v)] = static_cast<int>(g.in_edges(v).size());

  // Min-heap on node id gives the lexicographically smallest topological
  // order, so ties always break toward the lower id.
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId v = 0; v < n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);

  IndexAssignment idx;
  idx.index_of.assign(static_cast<std::size_t>(n), -1);
  idx.node_at.reserve(static_cast<std::size_t>(n));
  int next = 0;
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    idx.index_of[static_cast<std::size_t>(v)] = next++;
    idx.node_at.push_back(v);
    for (EdgeId e : g.out_edges(v))
      if (--indeg[static_cast<std::size_t>(g.edge(e).to)] == 0) ready.push(g.edge(e).to);
  }
  return idx;
}

Grid gen_grid(int side) {
  if (side < 3 || side % 2 == 0)
    throw InvalidSide("grid side must be an odd integer >= 3, got " + std::to_string(side));

  GridLayout layout{side};
  const int c = side / 2;
  auto dist = [c](int row, int col) { return std::abs(row - c) + std::abs(col - c); };

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(2 * side * (side - 1)));
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      // Right and down neighbors; adjacent cells differ by exactly 1 in
      // Manhattan distance to the center, so the orientation is total.
      if (col + 1 < side) {
        NodeId a = layout.node_at(row, col), b = layout.node_at(row, col + 1);
        if (dist(row, col) < dist(row, col + 1))
          edges.emplace_back(a, b);
        else
          edges.emplace_back(b, a);
      }
      if (row + 1 < side) {
        NodeId a = layout.node_at(row, col), b = layout.node_at(row + 1, col);
        if (dist(row, col) < dist(row + 1, col))
          edges.emplace_back(a, b);
        else
          edges.emplace_back(b, a);
      }
    }
  }
  return Grid{OverlayGraph(side * side, edges, layout.center()), layout};
}

OverlayGraph gen_random_dag(int n, double edge_probability, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random DAG needs n >= 2");
  if (edge_probability < 0.0 || edge_probability > 1.0)
    throw std::invalid_argument("edge_probability must lie in [0,1]");

  std::mt19937_64 gen(seed);
  // 53-bit uniform draw; avoids std::bernoulli_distribution whose rounding
  // is implementation-defined, keeping edge sets identical across platforms.
  auto coin = [&gen](double p) {
    return (static_cast<double>(gen() >> 11) * 0x1.0p-53) < p;
  };

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (j == i + 1)
        edges.emplace_back(i, j);  // forced spanning path
      else if (coin(edge_probability))
        edges.emplace_back(i, j);
    }
  }
  return OverlayGraph(n, edges, 0);
}

}  // namespace optcast
