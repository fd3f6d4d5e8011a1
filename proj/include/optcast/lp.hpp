#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "optcast/capacity.hpp"

namespace optcast {

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Sense { Le, Eq, Ge };

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// maximize objective . x  subject to  lhs.row(i) . x  (sense_i)  rhs_i,
/// x >= lower (zeros when empty). Dense; meant for desk-scale instances.
struct LinearProgram {
  Vec objective;
  Eigen::MatrixXd lhs;
  Vec rhs;
  std::vector<Sense> sense;
  Vec lower;

  int var_count() const { return static_cast<int>(objective.size()); }
  int row_count() const { return static_cast<int>(rhs.size()); }
};

struct LpSolution {
  LpStatus status;
  Vec x;             // empty unless Optimal
  double objective;  // 0 unless Optimal
};

/// Two-phase dense simplex. Dantzig pricing with Bland's rule engaged on
/// degenerate stalls, so the pivot sequence always terminates. Optimal
/// solutions satisfy every constraint within 1e-7.
LpSolution lp_solve(const LinearProgram& p);

}  // namespace optcast
