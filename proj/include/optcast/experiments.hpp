#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optcast/capacity.hpp"
#include "optcast/dynamics.hpp"
#include "optcast/graph.hpp"

namespace optcast {

struct Scenario {
  OverlayGraph graph;
  std::optional<GridLayout> layout;
  CapacityModel model;
  StepParams params;
  Utility utility = Utility::log_utility();
  std::string utility_tag = "log";
  double reference_rate = 0.0;  // oracle B, 0 until computed
  std::string label;
};

/// Grid with per-edge caps of 4 Mbps, except the two edges into the top-left
/// corner at 1 Mbps each.
Scenario setting_one(int side);

/// Grid with per-node upload caps of 8 Mbps, 16 at the source, and 1 at each
/// of the corner's two in-neighbors.
Scenario setting_two(int side);

/// Oracle reference for the maximum broadcast rate. Uses the cut-based LP
/// when its flow formulation stays desk-scale and the neighbor LP beyond
/// that (the two agree; that equivalence is separately under test).
double reference_broadcast_rate(const OverlayGraph& g, const CapacityModel& m);

struct ConvergenceReport {
  std::string label;
  int node_count = 0;
  bool converged = false;
  long convergence_time_slots = -1;
  double z_final = 0.0;
  double reference = 0.0;
  double relative_error = 0.0;
};

/// Convergence time: the first slot from which the recorded rate stays
/// within eps_rel of the reference through at least `window` further slots
/// (and until the end of the record).
ConvergenceReport measure_convergence(const Trajectory& traj, double reference, double eps_rel,
                                      int window);

/// Runs one scenario per side under the chosen setting (1 or 2); entries
/// that fail to converge are reported, not fatal.
std::vector<ConvergenceReport> size_sweep(int setting, const std::vector<int>& sides,
                                          const StepParams& params, long max_slots,
                                          double eps_rel, int window);

}  // namespace optcast
