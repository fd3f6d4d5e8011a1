#include "optcast/oracle.hpp"

#include <string>
#include <vector>

namespace optcast {
namespace {

void check_model(const OverlayGraph& g, const CapacityModel& m) {
  if (m.edge_count() != g.edge_count())
    throw DimensionMismatch("capacity model covers " + std::to_string(m.edge_count()) +
                            " edges, graph has " + std::to_string(g.edge_count()));
}

void append_capacity_rows(const CapacityModel& m, int col_offset, Eigen::MatrixXd& lhs,
                          Vec& rhs, std::vector<Sense>& sense, int& row) {
  const auto& a = m.rows();
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
      lhs(row + static_cast<int>(it.row()), col_offset + static_cast<int>(it.col())) = it.value();
  for (int k = 0; k < m.constraint_count(); ++k) {
    rhs[row + k] = m.bounds()[k];
    sense.push_back(Sense::Le);
  }
  row += m.constraint_count();
}

BroadcastRate solve_or_throw(LinearProgram&& p, int rate_offset, int edge_count) {
  LpSolution sol = lp_solve(p);
  if (sol.status != LpStatus::Optimal)
    throw NumericalFailure("broadcast-rate LP is feasible and bounded by construction; solver said otherwise");
  return {sol.objective, sol.x.segment(rate_offset, edge_count)};
}

}  // namespace

BroadcastRate max_broadcast_rate_cut(const OverlayGraph& g, const CapacityModel& m) {
  check_model(g, m);
  const int n = g.node_count();
  const int ne = g.edge_count();
  std::vector<NodeId> receivers;
  for (NodeId v = 0; v < n; ++v)
    if (v != g.source()) receivers.push_back(v);
  const int nr = static_cast<int>(receivers.size());

  // Columns: [t | r | f^v per receiver]; rows: capacity, f <= r coupling,
  // conservation at every node other than {s, v}, and net inflow >= t at v.
  const int cols = 1 + ne + nr * ne;
  const int rows = m.constraint_count() + nr * ne + nr * (n - 2) + nr;
  auto f_col = [ne](int vi, EdgeId e) { return 1 + ne + vi * ne + e; };

  LinearProgram p;
  p.objective = Vec::Zero(cols);
  p.objective[0] = 1.0;
  p.lhs = Eigen::MatrixXd::Zero(rows, cols);
  p.rhs = Vec::Zero(rows);
  p.sense.reserve(static_cast<std::size_t>(rows));

  int row = 0;
  append_capacity_rows(m, 1, p.lhs, p.rhs, p.sense, row);

  for (int vi = 0; vi < nr; ++vi) {
    for (EdgeId e = 0; e < ne; ++e) {
      p.lhs(row, f_col(vi, e)) = 1.0;
      p.lhs(row, 1 + e) = -1.0;
      p.sense.push_back(Sense::Le);
      ++row;
    }
  }
  for (int vi = 0; vi < nr; ++vi) {
    for (NodeId w = 0; w < n; ++w) {
      if (w == g.source() || w == receivers[static_cast<std::size_t>(vi)]) continue;
      for (EdgeId e : g.in_edges(w)) p.lhs(row, f_col(vi, e)) = 1.0;
      for (EdgeId e : g.out_edges(w)) p.lhs(row, f_col(vi, e)) = -1.0;
      p.sense.push_back(Sense::Eq);
      ++row;
    }
  }
  for (int vi = 0; vi < nr; ++vi) {
    const NodeId v = receivers[static_cast<std::size_t>(vi)];
    for (EdgeId e : g.in_edges(v)) p.lhs(row, f_col(vi, e)) = 1.0;
    for (EdgeId e : g.out_edges(v)) p.lhs(row, f_col(vi, e)) = -1.0;
    p.lhs(row, 0) = -1.0;
    p.sense.push_back(Sense::Ge);
    ++row;
  }

  return solve_or_throw(std::move(p), 1, ne);
}

BroadcastRate max_broadcast_rate_neighbor(const OverlayGraph& g, const CapacityModel& m) {
  check_model(g, m);
  const int ne = g.edge_count();

  // Columns: [z | r]; one row per (receiver v, in-neighbor w) pair.
  const int cols = 1 + ne;
  const int rows = ne + m.constraint_count();

  LinearProgram p;
  p.objective = Vec::Zero(cols);
  p.objective[0] = 1.0;
  p.lhs = Eigen::MatrixXd::Zero(rows, cols);
  p.rhs = Vec::Zero(rows);
  p.sense.reserve(static_cast<std::size_t>(rows));

  int row = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == g.source()) continue;
    for (EdgeId in_e : g.in_edges(v)) {
      const NodeId w = g.edge(in_e).from;
      for (EdgeId e : g.in_edges(v)) p.lhs(row, 1 + e) += 1.0;
      for (EdgeId e : g.in_edges(w)) p.lhs(row, 1 + e) -= 1.0;
      if (w == g.source()) p.lhs(row, 0) = -1.0;
      p.sense.push_back(Sense::Ge);
      ++row;
    }
  }
  append_capacity_rows(m, 1, p.lhs, p.rhs, p.sense, row);

  return solve_or_throw(std::move(p), 1, ne);
}

}  // namespace optcast
