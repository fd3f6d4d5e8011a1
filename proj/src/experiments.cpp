#include "optcast/experiments.hpp"

#include <cmath>

#include "optcast/oracle.hpp"

namespace optcast {
namespace {

// Above this many flow-LP variables the dense simplex stops being sensible
// and the neighbor formulation supplies the reference instead.
constexpr long kMaxCutLpVars = 4000;

std::string side_label(int setting, int side) {
  return "setting" + std::to_string(setting) + "-side" + std::to_string(side);
}

}  // namespace

Scenario setting_one(int side) {
  Grid grid = gen_grid(side);
  std::map<EdgeId, double> caps;
  for (EdgeId e = 0; e < grid.graph.edge_count(); ++e) caps[e] = 4.0;
  for (EdgeId e : grid.graph.in_edges(grid.layout.top_left())) caps[e] = 1.0;
  CapacityModel model = edge_capacitated(grid.graph, caps);
  Scenario s{std::move(grid.graph), grid.layout,    std::move(model), StepParams{},
             Utility::log_utility(), "log",         0.0,              side_label(1, side)};
  return s;
}

Scenario setting_two(int side) {
  Grid grid = gen_grid(side);
  std::map<NodeId, double> caps;
  for (NodeId v = 0; v < grid.graph.node_count(); ++v)
    if (!grid.graph.out_edges(v).empty()) caps[v] = 8.0;
  caps[grid.layout.center()] = 16.0;
  for (NodeId v : grid.graph.in_neighbors(grid.layout.top_left())) caps[v] = 1.0;
  CapacityModel model = node_capacitated(grid.graph, caps);
  Scenario s{std::move(grid.graph), grid.layout,    std::move(model), StepParams{},
             Utility::log_utility(), "log",         0.0,              side_label(2, side)};
  return s;
}

double reference_broadcast_rate(const OverlayGraph& g, const CapacityModel& m) {
  const long flow_vars = 1L + g.edge_count() +
                         static_cast<long>(g.node_count() - 1) * g.edge_count();
  if (flow_vars <= kMaxCutLpVars) return max_broadcast_rate_cut(g, m).rate;
  return max_broadcast_rate_neighbor(g, m).rate;
}

ConvergenceReport measure_convergence(const Trajectory& traj, double reference, double eps_rel,
                                      int window) {
  if (traj.samples.empty()) throw std::invalid_argument("empty trajectory");
  if (!(reference > 0.0)) throw std::invalid_argument("reference rate must be positive");

  ConvergenceReport rep;
  rep.reference = reference;
  rep.z_final = traj.samples.back().z;
  rep.relative_error = std::abs(rep.z_final - reference) / reference;

  // Longest in-band suffix of the record.
  std::size_t first = traj.samples.size();
  for (std::size_t i = traj.samples.size(); i-- > 0;) {
    if (std::abs(traj.samples[i].z - reference) / reference < eps_rel)
      first = i;
    else
      break;
  }
  if (first < traj.samples.size()) {
    const long start = traj.samples[first].slot;
    const long end = traj.samples.back().slot;
    if (end - start >= window) {
      rep.converged = true;
      rep.convergence_time_slots = start;
    }
  }
  return rep;
}

std::vector<ConvergenceReport> size_sweep(int setting, const std::vector<int>& sides,
                                          const StepParams& params, long max_slots,
                                          double eps_rel, int window) {
  if (setting != 1 && setting != 2) throw std::invalid_argument("setting must be 1 or 2");
  std::vector<ConvergenceReport> reports;
  for (int side : sides) {
    Scenario sc = setting == 1 ? setting_one(side) : setting_two(side);
    sc.params = params;
    sc.reference_rate = reference_broadcast_rate(sc.graph, sc.model);
    const Trajectory traj =
        run_fluid(sc.graph, sc.model, sc.params, sc.utility, max_slots,
                  ConvergenceSpec{eps_rel, window, sc.reference_rate});
    ConvergenceReport rep = measure_convergence(traj, sc.reference_rate, eps_rel, window);
    rep.label = sc.label;
    rep.node_count = sc.graph.node_count();
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace optcast
