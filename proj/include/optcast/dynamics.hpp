#pragma once

#include <functional>
#include <vector>

#include "optcast/capacity.hpp"
#include "optcast/graph.hpp"

namespace optcast {

struct KeyMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// [b]_a^+ : max(0, b) when a <= 0, else b. Zeroes outward drift at the
/// boundary of the nonnegative orthant.
inline double project_positive(double b, double a) { return a <= 0.0 ? std::max(0.0, b) : b; }

/// Queues are edge-indexed: entry e = (u,v) is the queue the receiving node v
/// keeps toward its in-neighbor u (Mbps-slots).
using QueueState = Vec;

/// Per-edge back-pressure; the value of edge (v,u) depends only on the
/// receiving endpoint u.
using PressureField = Vec;

/// Per-constraint-row multipliers of the capacity rows.
using DualState = Vec;

struct StepParams {
  double alpha = 0.05;  // source rate gain
  double gamma = 0.05;  // queue gain
  double beta = 0.05;   // link rate gain
  double sigma = 0.05;  // capacity dual gain
  double dt = 1.0;      // slot length
  double z_floor = 1e-3;
  double z_cap = 0.0;  // <= 0: auto, 10x the largest capacity bound
  int inner_iters = 1; // scheduler sub-steps per slot (non-node kinds)

  /// Copy with z_cap resolved against a capacity model.
  StepParams resolved_for(const CapacityModel& m) const;
  void validate() const;
};

struct Utility {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static Utility log_utility();
};

/// P_{vu} = sum of u's queues toward its in-neighbors (deficit) minus the sum
/// of the queues u's out-neighbors keep toward u (surplus).
PressureField back_pressure(const QueueState& theta, const OverlayGraph& g);

/// Closed-form capacity scheduling for per-node upload caps: each node puts
/// its full capacity on the out-edge with the largest positive pressure
/// (ties to the lowest destination id) and idles otherwise.
RateAllocation schedule_node_capacitated(const PressureField& pressure, const OverlayGraph& g,
                                         const Vec& node_caps);

/// Closed-form scheduling for independent per-edge caps: every positive-
/// pressure edge transmits at its cap, the rest stay silent. This is the
/// exact subproblem optimum when the constraint rows are the identity.
RateAllocation schedule_edge_capacitated(const PressureField& pressure, const Vec& edge_caps);

struct SchedulerState {
  RateAllocation rates;
  DualState duals;
};

/// One projected primal-dual step of the capacity-scheduling subproblem
/// (maximize pressure-weighted rate subject to the capacity rows).
///
/// Uses an extragradient corrector: a plain forward-Euler step of these
/// dynamics spirals outward around the bilinear saddle and never settles,
/// so the corrector re-evaluates the drift at a probe point. Fixed points
/// are unchanged.
SchedulerState schedule_general_step(const PressureField& pressure, const SchedulerState& state,
                                     const CapacityModel& m, const StepParams& params);

struct FluidState {
  double z = 0.0;
  QueueState theta;
};

/// One step of the source-rate / queue update given the scheduled rates.
/// z stays in [z_floor, z_cap]; queues stay nonnegative.
FluidState primal_dual_step(const FluidState& state, const RateAllocation& rates,
                            const OverlayGraph& g, const StepParams& params,
                            const Utility& utility);

struct ConvergenceSpec {
  double eps_rel = 0.02;
  int window = 200;
  double z_ref = 0.0;  // <= 0: never converges early, run to max_slots
};

struct SlotSample {
  long slot;
  double z;
  double max_cap_violation;
  double min_margin;  // worst neighbor-constraint slack of this slot's rates
};

struct InvariantCounters {
  long negative_queue = 0;
  long negative_rate = 0;
  long negative_dual = 0;
  long z_out_of_bounds = 0;
  long infeasible_node_schedule = 0;
  long pressure_mismatch = 0;

  long total() const {
    return negative_queue + negative_rate + negative_dual + z_out_of_bounds +
           infeasible_node_schedule + pressure_mismatch;
  }
};

struct Trajectory {
  std::vector<SlotSample> samples;
  long slots_run = 0;
  bool converged = false;
  long convergence_slot = -1;
  double z_final = 0.0;
  double window_avg_z = 0.0;
  RateAllocation window_avg_rates;  // mean schedule over the trailing window
  InvariantCounters invariants;
};

/// Runs the per-slot loop: back-pressure, capacity scheduling (closed form
/// for NodeCap, warm-started general steps otherwise), then the z/queue
/// update. Deterministic; stops once z stays within eps_rel of z_ref for a
/// full window of slots, or at max_slots.
Trajectory run_fluid(const OverlayGraph& g, const CapacityModel& m, const StepParams& params,
                     const Utility& utility, long max_slots, const ConvergenceSpec& conv,
                     int record_stride = 1);

}  // namespace optcast
