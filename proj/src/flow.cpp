#include "optcast/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace optcast {
namespace {

double cut_value(const OverlayGraph& g, const RateAllocation& r, const std::vector<char>& in_u) {
  double total = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (in_u[static_cast<std::size_t>(ed.from)] && !in_u[static_cast<std::size_t>(ed.to)])
      total += r[e];
  }
  return total;
}

void check_cut_args(const OverlayGraph& g, const RateAllocation& r, NodeId v) {
  if (r.size() != g.edge_count())
    throw DimensionMismatch("rate vector size does not match edge count");
  if (v == g.source()) throw std::invalid_argument("receiver must differ from the source");
  if (v < 0 || v >= g.node_count()) throw std::out_of_range("receiver out of range");
  if (r.minCoeff() < 0.0) throw std::invalid_argument("rates must be nonnegative");
}

}  // namespace

CutResult min_cut(const OverlayGraph& g, const RateAllocation& r, NodeId v) {
  check_cut_args(g, r, v);
  const int n = g.node_count();
  const double eps = 1e-12 * (1.0 + (r.size() ? r.maxCoeff() : 0.0));

  // Residual arcs in xor pairs: arc 2e is the edge, arc 2e+1 its reverse.
  std::vector<double> residual(static_cast<std::size_t>(2 * g.edge_count()), 0.0);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    residual[static_cast<std::size_t>(2 * e)] = r[e];
    adj[static_cast<std::size_t>(g.edge(e).from)].push_back(2 * e);
    adj[static_cast<std::size_t>(g.edge(e).to)].push_back(2 * e + 1);
  }
  auto head = [&g](int arc) {
    const Edge& ed = g.edge(static_cast<EdgeId>(arc / 2));
    return (arc & 1) ? ed.from : ed.to;
  };

  std::vector<int> pred_arc(static_cast<std::size_t>(n));
  while (true) {
    std::fill(pred_arc.begin(), pred_arc.end(), -1);
    pred_arc[static_cast<std::size_t>(g.source())] = -2;
    std::queue<NodeId> q;
    q.push(g.source());
    while (!q.empty() && pred_arc[static_cast<std::size_t>(v)] == -1) {
      NodeId x = q.front();
      q.pop();
      for (int arc : adj[static_cast<std::size_t>(x)]) {
        NodeId y = head(arc);
        if (pred_arc[static_cast<std::size_t>(y)] != -1 ||
            residual[static_cast<std::size_t>(arc)] <= eps)
          continue;
        pred_arc[static_cast<std::size_t>(y)] = arc;
        q.push(y);
      }
    }
    if (pred_arc[static_cast<std::size_t>(v)] == -1) break;
    double bottleneck = std::numeric_limits<double>::infinity();
    for (NodeId x = v; x != g.source();) {
      const int arc = pred_arc[static_cast<std::size_t>(x)];
      bottleneck = std::min(bottleneck, residual[static_cast<std::size_t>(arc)]);
      x = (arc & 1) ? g.edge(static_cast<EdgeId>(arc / 2)).to
                    : g.edge(static_cast<EdgeId>(arc / 2)).from;
    }
    for (NodeId x = v; x != g.source();) {
      const int arc = pred_arc[static_cast<std::size_t>(x)];
      residual[static_cast<std::size_t>(arc)] -= bottleneck;
      residual[static_cast<std::size_t>(arc ^ 1)] += bottleneck;
      x = (arc & 1) ? g.edge(static_cast<EdgeId>(arc / 2)).to
                    : g.edge(static_cast<EdgeId>(arc / 2)).from;
    }
  }

  // Residual-reachable set is a minimum cut witness; summing r over its
  // crossing edges sidesteps the flow value's accumulated rounding.
  std::vector<char> in_u(static_cast<std::size_t>(n), 0);
  std::queue<NodeId> q;
  in_u[static_cast<std::size_t>(g.source())] = 1;
  q.push(g.source());
  while (!q.empty()) {
    NodeId x = q.front();
    q.pop();
    for (int arc : adj[static_cast<std::size_t>(x)]) {
      NodeId y = head(arc);
      if (!in_u[static_cast<std::size_t>(y)] && residual[static_cast<std::size_t>(arc)] > eps) {
        in_u[static_cast<std::size_t>(y)] = 1;
        q.push(y);
      }
    }
  }

  CutResult res;
  res.value = cut_value(g, r, in_u);
  for (NodeId x = 0; x < n; ++x)
    if (in_u[static_cast<std::size_t>(x)]) res.source_side.push_back(x);
  return res;
}

CutResult brute_force_min_cut(const OverlayGraph& g, const RateAllocation& r, NodeId v) {
  check_cut_args(g, r, v);
  const int n = g.node_count();
  if (n > 16) throw TooLarge("brute-force cut enumeration limited to 16 nodes");

  std::vector<NodeId> others;
  for (NodeId x = 0; x < n; ++x)
    if (x != g.source() && x != v) others.push_back(x);

  double best = std::numeric_limits<double>::infinity();
  std::vector<NodeId> best_u;
  std::vector<char> in_u(static_cast<std::size_t>(n));
  const std::uint32_t subsets = 1u << others.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::fill(in_u.begin(), in_u.end(), 0);
    in_u[static_cast<std::size_t>(g.source())] = 1;
    for (std::size_t k = 0; k < others.size(); ++k)
      if (mask & (1u << k)) in_u[static_cast<std::size_t>(others[k])] = 1;
    const double value = cut_value(g, r, in_u);
    if (value > best) continue;
    std::vector<NodeId> u;
    for (NodeId x = 0; x < n; ++x)
      if (in_u[static_cast<std::size_t>(x)]) u.push_back(x);
    if (value < best ||
        std::lexicographical_compare(u.begin(), u.end(), best_u.begin(), best_u.end())) {
      best = value;
      best_u = std::move(u);
    }
  }
  return {best, std::move(best_u)};
}

}  // namespace optcast
