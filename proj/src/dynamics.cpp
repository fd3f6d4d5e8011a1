#include "optcast/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace optcast {
namespace {

// Total receiving rate per node.
Vec receive_rates(const RateAllocation& rates, const OverlayGraph& g) {
  Vec in = Vec::Zero(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) in[g.edge(e).to] += rates[e];
  return in;
}

// Queue drift of edge e = (u,v): sender inrate (+z at the source) minus
// receiver inrate. The neighbor-constraint margin is its negation.
Vec queue_drift(double z, const RateAllocation& rates, const OverlayGraph& g) {
  const Vec in = receive_rates(rates, g);
  Vec drift(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    drift[e] = in[ed.from] + (ed.from == g.source() ? z : 0.0) - in[ed.to];
  }
  return drift;
}

Vec node_caps_from_model(const OverlayGraph& g, const CapacityModel& m) {
  Vec caps = Vec::Zero(g.node_count());
  for (int k = 0; k < m.constraint_count(); ++k)
    caps[static_cast<Eigen::Index>(m.row_keys()[static_cast<std::size_t>(k)])] = m.bounds()[k];
  return caps;
}

}  // namespace

StepParams StepParams::resolved_for(const CapacityModel& m) const {
  StepParams out = *this;
  if (out.z_cap <= 0.0) out.z_cap = 10.0 * m.max_bound();
  out.validate();
  return out;
}

void StepParams::validate() const {
  if (!(alpha > 0 && gamma > 0 && beta > 0 && sigma > 0 && dt > 0 && z_floor > 0 && z_cap > 0))
    throw std::invalid_argument("step parameters must be positive");
  if (!(z_floor < z_cap)) throw std::invalid_argument("z_floor must be below z_cap");
  if (inner_iters < 1) throw std::invalid_argument("inner_iters must be >= 1");
}

Utility Utility::log_utility() {
  return {[](double z) { return std::log(z); }, [](double z) { return 1.0 / z; }};
}

PressureField back_pressure(const QueueState& theta, const OverlayGraph& g) {
  if (theta.size() != g.edge_count())
    throw KeyMismatch("queue state has " + std::to_string(theta.size()) + " entries, graph has " +
                      std::to_string(g.edge_count()) + " edges");
  Vec deficit = Vec::Zero(g.node_count());
  Vec surplus = Vec::Zero(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    deficit[g.edge(e).to] += theta[e];
    surplus[g.edge(e).from] += theta[e];
  }
  PressureField p(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const NodeId u = g.edge(e).to;
    p[e] = deficit[u] - surplus[u];
  }
  return p;
}

RateAllocation schedule_node_capacitated(const PressureField& pressure, const OverlayGraph& g,
                                         const Vec& node_caps) {
  RateAllocation r = RateAllocation::Zero(g.edge_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& out = g.out_edges(v);
    if (out.empty()) continue;
    EdgeId best = out.front();
    for (EdgeId e : out) {
      if (pressure[e] > pressure[best] ||
          (pressure[e] == pressure[best] && g.edge(e).to < g.edge(best).to))
        best = e;
    }
    if (pressure[best] > 0.0) r[best] = node_caps[v];
  }
  return r;
}

RateAllocation schedule_edge_capacitated(const PressureField& pressure, const Vec& edge_caps) {
  if (pressure.size() != edge_caps.size()) throw DimensionMismatch("pressure/caps size mismatch");
  return (pressure.array() > 0.0).select(edge_caps, 0.0);
}

SchedulerState schedule_general_step(const PressureField& pressure, const SchedulerState& state,
                                     const CapacityModel& m, const StepParams& params) {
  const auto& a = m.rows();
  const double rate_step = params.dt * params.beta;
  const double dual_step = params.dt * params.sigma;

  auto project_step = [](const Vec& base, const Vec& drift, double step) {
    Vec out(base.size());
    for (Eigen::Index i = 0; i < base.size(); ++i)
      out[i] = std::max(0.0, base[i] + step * project_positive(drift[i], base[i]));
    return out;
  };

  const Vec rate_drift = pressure - a.transpose() * state.duals;
  const Vec dual_drift = a * state.rates - m.bounds();
  const Vec probe_rates = project_step(state.rates, rate_drift, rate_step);
  const Vec probe_duals = project_step(state.duals, dual_drift, dual_step);

  const Vec rate_drift2 = pressure - a.transpose() * probe_duals;
  const Vec dual_drift2 = a * probe_rates - m.bounds();
  return {project_step(state.rates, rate_drift2, rate_step),
          project_step(state.duals, dual_drift2, dual_step)};
}

FluidState primal_dual_step(const FluidState& state, const RateAllocation& rates,
                            const OverlayGraph& g, const StepParams& params,
                            const Utility& utility) {
  params.validate();
  if (state.theta.size() != g.edge_count()) throw KeyMismatch("queue state size mismatch");
  if (rates.size() != g.edge_count()) throw DimensionMismatch("rate vector size mismatch");

  double source_price = 0.0;
  for (EdgeId e : g.out_edges(g.source())) source_price += state.theta[e];
  const double z_drift = utility.derivative(state.z) - source_price;
  const double z_next = std::clamp(
      state.z + params.dt * params.alpha * project_positive(z_drift, state.z), params.z_floor,
      params.z_cap);

  const Vec drift = queue_drift(state.z, rates, g);
  QueueState theta(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    theta[e] = std::max(
        0.0, state.theta[e] + params.dt * params.gamma * project_positive(drift[e], state.theta[e]));
  return {z_next, std::move(theta)};
}

Trajectory run_fluid(const OverlayGraph& g, const CapacityModel& m, const StepParams& raw_params,
                     const Utility& utility, long max_slots, const ConvergenceSpec& conv,
                     int record_stride) {
  const StepParams params = raw_params.resolved_for(m);
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  if (conv.window < 1) throw std::invalid_argument("convergence window must be >= 1");

  const bool node_kind = m.kind() == CapacityKind::NodeCap;
  const bool edge_kind = m.kind() == CapacityKind::EdgeCap;
  const Vec node_caps = node_kind ? node_caps_from_model(g, m) : Vec();

  FluidState state{params.z_floor, QueueState::Zero(g.edge_count())};
  SchedulerState sched{RateAllocation::Zero(g.edge_count()), DualState::Zero(m.constraint_count())};

  Trajectory traj;
  traj.window_avg_rates = RateAllocation::Zero(g.edge_count());

  // Trailing window of schedules for the averaged rate / z report.
  const std::size_t win = static_cast<std::size_t>(conv.window) + 1;
  std::deque<RateAllocation> rate_window;
  std::deque<double> z_window;
  Vec rate_sum = Vec::Zero(g.edge_count());
  double z_sum = 0.0;

  int in_band = 0;
  const double feas_eps = 1e-12 * (1.0 + m.max_bound());

  for (long slot = 0; slot < max_slots; ++slot) {
    const PressureField pressure = back_pressure(state.theta, g);

    // Independent per-edge recomputation of every pressure entry; also
    // covers the "same value for all edges into u" property.
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const NodeId u = g.edge(e).to;
      double direct = 0.0;
      for (EdgeId ein : g.in_edges(u)) direct += state.theta[ein];
      for (EdgeId eout : g.out_edges(u)) direct -= state.theta[eout];
      if (std::abs(pressure[e] - direct) > 1e-9) ++traj.invariants.pressure_mismatch;
    }

    if (node_kind) {
      sched.rates = schedule_node_capacitated(pressure, g, node_caps);
    } else if (edge_kind) {
      sched.rates = schedule_edge_capacitated(pressure, m.bounds());
    } else {
      for (int it = 0; it < params.inner_iters; ++it)
        sched = schedule_general_step(pressure, sched, m, params);
    }
    state = primal_dual_step(state, sched.rates, g, params, utility);

    // Always-on invariant accounting (acceptance criterion hooks).
    auto& inv = traj.invariants;
    if (state.theta.size() && state.theta.minCoeff() < 0.0) ++inv.negative_queue;
    if (sched.rates.size() && sched.rates.minCoeff() < 0.0) ++inv.negative_rate;
    if (sched.duals.size() && sched.duals.minCoeff() < 0.0) ++inv.negative_dual;
    if (state.z < params.z_floor || state.z > params.z_cap) ++inv.z_out_of_bounds;
    if (node_kind) {
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.out_edges(v).empty()) continue;
        double total = 0.0;
        for (EdgeId e : g.out_edges(v)) total += sched.rates[e];
        if (std::abs(total) > feas_eps && std::abs(total - node_caps[v]) > feas_eps)
          ++inv.infeasible_node_schedule;
      }
    }
    rate_window.push_back(sched.rates);
    rate_sum += sched.rates;
    z_window.push_back(state.z);
    z_sum += state.z;
    if (rate_window.size() > win) {
      rate_sum -= rate_window.front();
      rate_window.pop_front();
      z_sum -= z_window.front();
      z_window.pop_front();
    }

    const double violation = feasible(sched.rates, m, 0.0).max_violation;
    const double margin = -queue_drift(state.z, sched.rates, g).maxCoeff();
    if (slot % record_stride == 0)
      traj.samples.push_back({slot, state.z, violation, margin});

    traj.slots_run = slot + 1;
    traj.z_final = state.z;

    if (conv.z_ref > 0.0) {
      if (std::abs(state.z - conv.z_ref) / conv.z_ref < conv.eps_rel)
        ++in_band;
      else
        in_band = 0;
      if (in_band >= conv.window + 1) {
        traj.converged = true;
        traj.convergence_slot = slot - conv.window;
        break;
      }
    }
  }

  if (!rate_window.empty()) {
    traj.window_avg_rates = rate_sum / static_cast<double>(rate_window.size());
    traj.window_avg_z = z_sum / static_cast<double>(z_window.size());
  }
  return traj;
}

}  // namespace optcast
