#include "optcast/capacity.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace optcast {

CapacityModel::CapacityModel(CapacityKind kind, int edge_count,
                             std::vector<Eigen::Triplet<double>> entries, Vec bounds,
                             std::vector<long> row_keys)
    : kind_(kind), bounds_(std::move(bounds)), row_keys_(std::move(row_keys)) {
  const int m = static_cast<int>(bounds_.size());
  if (m == 0) throw std::invalid_argument("capacity model needs at least one row");
  if (row_keys_.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("row_keys size mismatch");
  for (int k = 0; k < m; ++k)
    if (!(bounds_[k] > 0.0))
      throw NonpositiveCapacity("bound of row " + std::to_string(k) + " must be positive");
  for (const auto& t : entries)
    if (t.value() != 1.0) throw std::invalid_argument("incidence entries must be 0 or 1");

  rows_.resize(m, edge_count);
  rows_.setFromTriplets(entries.begin(), entries.end());
  if (rows_.nonZeros() != static_cast<Eigen::Index>(entries.size()))
    throw std::invalid_argument("duplicate incidence entry");

  std::vector<char> covered(static_cast<std::size_t>(edge_count), 0);
  for (const auto& t : entries) covered[static_cast<std::size_t>(t.col())] = 1;
  for (int e = 0; e < edge_count; ++e)
    if (!covered[static_cast<std::size_t>(e)])
      throw std::invalid_argument("edge " + std::to_string(e) + " is not bounded by any row");
}

Vec CapacityModel::residuals(const RateAllocation& r) const {
  if (r.size() != rows_.cols())
    throw DimensionMismatch("rate vector has size " + std::to_string(r.size()) +
                            ", expected " + std::to_string(rows_.cols()));
  return rows_ * r - bounds_;
}

CapacityModel node_capacitated(const OverlayGraph& g, const std::map<NodeId, double>& caps) {
  std::vector<Eigen::Triplet<double>> entries;
  std::vector<double> bounds;
  std::vector<long> keys;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.out_edges(v).empty()) continue;  // vacuous row
    auto it = caps.find(v);
    if (it == caps.end())
      throw MissingCapacity("no capacity for transmitting node " + std::to_string(v));
    if (!(it->second > 0.0))
      throw NonpositiveCapacity("capacity of node " + std::to_string(v) + " must be positive");
    int row = static_cast<int>(bounds.size());
    for (EdgeId e : g.out_edges(v)) entries.emplace_back(row, e, 1.0);
    bounds.push_back(it->second);
    keys.push_back(v);
  }
  return CapacityModel(CapacityKind::NodeCap, g.edge_count(), std::move(entries),
                       Eigen::Map<const Vec>(bounds.data(), static_cast<Eigen::Index>(bounds.size())),
                       std::move(keys));
}

CapacityModel edge_capacitated(const OverlayGraph& g, const std::map<EdgeId, double>& caps) {
  std::vector<Eigen::Triplet<double>> entries;
  Vec bounds(g.edge_count());
  std::vector<long> keys;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto it = caps.find(e);
    if (it == caps.end()) throw MissingCapacity("no capacity for edge " + std::to_string(e));
    if (!(it->second > 0.0))
      throw NonpositiveCapacity("capacity of edge " + std::to_string(e) + " must be positive");
    entries.emplace_back(e, e, 1.0);
    bounds[e] = it->second;
    keys.push_back(e);
  }
  return CapacityModel(CapacityKind::EdgeCap, g.edge_count(), std::move(entries),
                       std::move(bounds), std::move(keys));
}

CapacityModel physical_link_model(const OverlayGraph& g,
                                  const std::map<EdgeId, std::vector<long>>& routes,
                                  const std::map<long, double>& link_caps) {
  // Rows ordered by ascending link id for determinism.
  std::map<long, int> row_of;
  std::set<long> used;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto it = routes.find(e);
    if (it == routes.end() || it->second.empty())
      throw UnroutedEdge("overlay edge " + std::to_string(e) + " crosses no physical link");
    for (long l : it->second) used.insert(l);
  }
  std::vector<double> bounds;
  std::vector<long> keys;
  for (long l : used) {
    auto it = link_caps.find(l);
    if (it == link_caps.end())
      throw MissingCapacity("no capacity for physical link " + std::to_string(l));
    if (!(it->second > 0.0))
      throw NonpositiveCapacity("capacity of link " + std::to_string(l) + " must be positive");
    row_of[l] = static_cast<int>(bounds.size());
    bounds.push_back(it->second);
    keys.push_back(l);
  }
  std::vector<Eigen::Triplet<double>> entries;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::set<long> dedup(routes.at(e).begin(), routes.at(e).end());
    for (long l : dedup) entries.emplace_back(row_of.at(l), e, 1.0);
  }
  return CapacityModel(CapacityKind::PhysicalLink, g.edge_count(), std::move(entries),
                       Eigen::Map<const Vec>(bounds.data(), static_cast<Eigen::Index>(bounds.size())),
                       std::move(keys));
}

FeasibilityResult feasible(const RateAllocation& r, const CapacityModel& m, double tol) {
  const Vec res = m.residuals(r);
  const double worst = res.maxCoeff();
  return {worst <= tol, std::max(0.0, worst)};
}

}  // namespace optcast
