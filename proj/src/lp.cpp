#include "optcast/lp.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace optcast {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kStallLimit = 64;  // degenerate pivots before Bland engages

// Dense simplex tableau. Layout: rows 0..m-1 are constraints, row m is the
// (minimization) cost row; column layout is [structural | slack/surplus |
// artificial | rhs]. Basis tracks the basic column of each constraint row.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int rows = 0;
  int cols = 0;  // excluding rhs column
  int art_begin = 0;
  long pivots = 0;

  double rhs(int i) const { return t(i, cols); }
  double cost(int j) const { return t(rows, j); }
  double objective() const { return -t(rows, cols); }

  void pivot(int row, int col) {
    const double piv = t(row, col);
    t.row(row) /= piv;
    Eigen::VectorXd column = t.col(col);
    column(row) = 0.0;
    t.noalias() -= column * t.row(row);
    t.col(col).setZero();
    t(row, col) = 1.0;
    basis[static_cast<std::size_t>(row)] = col;
    ++pivots;
  }

  // Entering column, or -1 at optimality. Artificials never re-enter.
  int entering(bool bland) const {
    int best = -1;
    double best_cost = -kCostTol;
    for (int j = 0; j < art_begin; ++j) {
      const double c = cost(j);
      if (c < best_cost) {
        if (bland) return j;
        best_cost = c;
        best = j;
      }
    }
    return best;
  }

  // Leaving row by minimum ratio; ties to the smallest basic column so the
  // combined rule stays cycle-free under Bland. Returns -1 if unbounded.
  int leaving(int col) const {
    int row = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      const double a = t(i, col);
      if (a <= kPivotTol) continue;
      const double ratio = rhs(i) / a;
      if (ratio < best - 1e-12 ||
          (ratio < best + 1e-12 && (row < 0 || basis[static_cast<std::size_t>(i)] <
                                                   basis[static_cast<std::size_t>(row)]))) {
        best = ratio;
        row = i;
      }
    }
    return row;
  }

  // Runs pivots until the cost row is nonnegative. Returns false on
  // unboundedness.
  bool optimize(long max_pivots) {
    bool bland = false;
    int stalled = 0;
    double last = objective();
    while (true) {
      const int col = entering(bland);
      if (col < 0) return true;
      const int row = leaving(col);
      if (row < 0) return false;
      pivot(row, col);
      if (pivots > max_pivots)
        throw NumericalFailure("simplex pivot limit exceeded (" + std::to_string(pivots) + ")");
      const double now = objective();
      if (now < last - 1e-12) {
        stalled = 0;
        last = now;
        bland = false;
      } else if (++stalled >= kStallLimit) {
        bland = true;
      }
    }
  }
};

}  // namespace

LpSolution lp_solve(const LinearProgram& p) {
  const int n = p.var_count();
  const int m = p.row_count();
  if (n < 1 || m < 1) throw std::invalid_argument("lp_solve needs at least one variable and row");
  if (p.lhs.rows() != m || p.lhs.cols() != n || static_cast<int>(p.sense.size()) != m)
    throw std::invalid_argument("inconsistent LP dimensions");
  if (p.lower.size() != 0 && p.lower.size() != n)
    throw std::invalid_argument("lower bound vector has wrong size");
  if (!p.objective.allFinite() || !p.lhs.allFinite() || !p.rhs.allFinite())
    throw std::invalid_argument("LP coefficients must be finite");

  const Vec lower = p.lower.size() ? p.lower : Vec::Zero(n);

  // Shift to y = x - lower >= 0 and normalize every row to rhs >= 0.
  Vec rhs = p.rhs - p.lhs * lower;
  Eigen::MatrixXd lhs = p.lhs;
  std::vector<Sense> sense = p.sense;
  for (int i = 0; i < m; ++i) {
    if (rhs[i] < 0.0) {
      rhs[i] = -rhs[i];
      lhs.row(i) = -lhs.row(i);
      if (sense[static_cast<std::size_t>(i)] == Sense::Le)
        sense[static_cast<std::size_t>(i)] = Sense::Ge;
      else if (sense[static_cast<std::size_t>(i)] == Sense::Ge)
        sense[static_cast<std::size_t>(i)] = Sense::Le;
    }
  }

  int n_slack = 0, n_art = 0;
  for (Sense s : sense) {
    if (s != Sense::Eq) ++n_slack;
    if (s != Sense::Le) ++n_art;
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = n + n_slack + n_art;
  tab.art_begin = n + n_slack;
  tab.t = Eigen::MatrixXd::Zero(m + 1, tab.cols + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);
  tab.t.topLeftCorner(m, n) = lhs;
  tab.t.col(tab.cols).head(m) = rhs;

  int slack = n, art = tab.art_begin;
  for (int i = 0; i < m; ++i) {
    switch (sense[static_cast<std::size_t>(i)]) {
      case Sense::Le:
        tab.t(i, slack) = 1.0;
        tab.basis[static_cast<std::size_t>(i)] = slack++;
        break;
      case Sense::Ge:
        tab.t(i, slack++) = -1.0;
        tab.t(i, art) = 1.0;
        tab.basis[static_cast<std::size_t>(i)] = art++;
        break;
      case Sense::Eq:
        tab.t(i, art) = 1.0;
        tab.basis[static_cast<std::size_t>(i)] = art++;
        break;
    }
  }

  const long max_pivots = 200000 + 50L * (m + tab.cols);

  // Phase 1: minimize the artificial sum, expressed through the basis.
  if (n_art > 0) {
    for (int i = 0; i < m; ++i)
      if (tab.basis[static_cast<std::size_t>(i)] >= tab.art_begin) tab.t.row(m) -= tab.t.row(i);
    tab.t.row(m).segment(tab.art_begin, n_art).setZero();
    if (!tab.optimize(max_pivots))
      throw NumericalFailure("phase-1 subproblem reported unbounded");
    const double infeas = tab.objective();
    if (infeas > 1e-7 * (1.0 + rhs.maxCoeff())) return {LpStatus::Infeasible, {}, 0.0};

    // Drive leftover artificials out of the basis; rows that cannot pivot
    // on any structural/slack column are redundant and get dropped.
    std::vector<int> keep;
    keep.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] < tab.art_begin) {
        keep.push_back(i);
        continue;
      }
      int col = -1;
      for (int j = 0; j < tab.art_begin; ++j)
        if (std::abs(tab.t(i, j)) > kPivotTol) {
          col = j;
          break;
        }
      if (col >= 0) {
        tab.pivot(i, col);
        keep.push_back(i);
      }
    }
    if (static_cast<int>(keep.size()) < m) {
      Eigen::MatrixXd compact(static_cast<int>(keep.size()) + 1, tab.cols + 1);
      std::vector<int> basis;
      for (std::size_t k = 0; k < keep.size(); ++k) {
        compact.row(static_cast<int>(k)) = tab.t.row(keep[k]);
        basis.push_back(tab.basis[static_cast<std::size_t>(keep[k])]);
      }
      compact.row(static_cast<int>(keep.size())) = tab.t.row(m);
      tab.t = std::move(compact);
      tab.rows = static_cast<int>(keep.size());
      tab.basis = std::move(basis);
    }
  }

  // Phase 2: minimize -objective over the phase-1 basis.
  tab.t.row(tab.rows).setZero();
  tab.t.row(tab.rows).head(n) = -p.objective.transpose();
  for (int i = 0; i < tab.rows; ++i) {
    const int b = tab.basis[static_cast<std::size_t>(i)];
    const double c = tab.t(tab.rows, b);
    if (c != 0.0) tab.t.row(tab.rows) -= c * tab.t.row(i);
  }
  if (!tab.optimize(max_pivots)) return {LpStatus::Unbounded, {}, 0.0};

  Vec y = Vec::Zero(n);
  for (int i = 0; i < tab.rows; ++i) {
    const int b = tab.basis[static_cast<std::size_t>(i)];
    if (b < n) y[b] = tab.rhs(i);
  }
  Vec x = y + lower;

  // Contract: Optimal solutions satisfy every row within 1e-7.
  const Vec lhs_x = p.lhs * x;
  for (int i = 0; i < m; ++i) {
    const double scale = 1.0 + std::abs(p.rhs[i]);
    const double diff = lhs_x[i] - p.rhs[i];
    const bool ok = (p.sense[static_cast<std::size_t>(i)] == Sense::Le && diff <= 1e-7 * scale) ||
                    (p.sense[static_cast<std::size_t>(i)] == Sense::Ge && diff >= -1e-7 * scale) ||
                    (p.sense[static_cast<std::size_t>(i)] == Sense::Eq && std::abs(diff) <= 1e-7 * scale);
    if (!ok)
      throw NumericalFailure("optimal basis violates row " + std::to_string(i) + " by " +
                             std::to_string(diff));
  }
  const double objective = p.objective.dot(x);
  return {LpStatus::Optimal, std::move(x), objective};
}

}  // namespace optcast
