#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace optcast {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

struct CycleDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnreachableReceiver : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SourceHasInEdges : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DuplicateEdge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidSide : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Directed overlay edge, origin -> destination.
struct Edge {
  NodeId from;
  NodeId to;
};

/// Immutable acyclic overlay with a designated source. Construction
/// validates acyclicity, source in-degree zero and reachability of every
/// node from the source. Safe to share across threads once built.
class OverlayGraph {
 public:
  OverlayGraph(int node_count, std::span<const std::pair<NodeId, NodeId>> edge_pairs,
               NodeId source);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  NodeId source() const { return source_; }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Edge ids entering / leaving a node, ascending by edge id.
  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }
  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }

  /// Neighbor node ids, in edge order.
  std::vector<NodeId> in_neighbors(NodeId v) const;
  std::vector<NodeId> out_neighbors(NodeId v) const;

  bool has_edge(NodeId from, NodeId to) const;

 private:
  int node_count_ = 0;
  NodeId source_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<EdgeId>> out_;
};

/// Validating constructor wrapper; throws CycleDetected, UnreachableReceiver,
/// SourceHasInEdges or DuplicateEdge.
OverlayGraph build_overlay(int node_count,
                           std::span<const std::pair<NodeId, NodeId>> edges,
                           NodeId source);

/// Permutation of 0..|V|-1 with index_of[source] == 0 and
/// index_of[u] < index_of[v] for every edge (u,v).
struct IndexAssignment {
  std::vector<int> index_of;   // NodeId -> I_v
  std::vector<NodeId> node_at; // inverse permutation
};

/// Deterministic topological indexing; ties broken by ascending node id.
IndexAssignment topological_index(const OverlayGraph& g);

/// Row-major side x side grid; node id = row * side + col.
struct GridLayout {
  int side = 0;

  NodeId node_at(int row, int col) const { return static_cast<NodeId>(row * side + col); }
  std::pair<int, int> coord_of(NodeId v) const { return {v / side, v % side}; }
  NodeId top_left() const { return 0; }
  NodeId center() const { return node_at(side / 2, side / 2); }
};

struct Grid {
  OverlayGraph graph;
  GridLayout layout;
};

/// Square grid with the center as source; every edge points from the cell
/// nearer the center (Manhattan distance) to the farther one, which makes
/// the grid a single-source DAG.
Grid gen_grid(int side);

/// Random DAG on nodes 0..n-1 (source 0): every forward pair (i,j), i<j,
/// gets an edge with the given probability; the path 0->1->...->n-1 is
/// always present so all nodes stay reachable. Deterministic per seed.
OverlayGraph gen_random_dag(int n, double edge_probability, std::uint64_t seed);

}  // namespace optcast
