#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <map>
#include <stdexcept>
#include <vector>

#include "optcast/graph.hpp"

namespace optcast {

using Vec = Eigen::VectorXd;

/// Per-edge link rates, indexed by EdgeId (Mbps).
using RateAllocation = Vec;

struct MissingCapacity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonpositiveCapacity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnroutedEdge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CapacityKind { NodeCap, EdgeCap, PhysicalLink, General };

/// Linear capacity constraints rows * r <= bounds with 0/1 incidence rows.
/// Every edge must be covered by at least one row; all bounds positive.
class CapacityModel {
 public:
  CapacityModel(CapacityKind kind, int edge_count,
                std::vector<Eigen::Triplet<double>> entries, Vec bounds,
                std::vector<long> row_keys);

  CapacityKind kind() const { return kind_; }
  int constraint_count() const { return static_cast<int>(bounds_.size()); }
  int edge_count() const { return static_cast<int>(rows_.cols()); }
  const Eigen::SparseMatrix<double>& rows() const { return rows_; }
  const Vec& bounds() const { return bounds_; }
  double max_bound() const { return bounds_.maxCoeff(); }

  /// Node / edge / physical-link id behind each constraint row.
  const std::vector<long>& row_keys() const { return row_keys_; }

  /// Row residuals rows * r - bounds.
  Vec residuals(const RateAllocation& r) const;

 private:
  CapacityKind kind_;
  Eigen::SparseMatrix<double> rows_;  // m x |E|
  Vec bounds_;
  std::vector<long> row_keys_;
};

/// One row per node with out-degree >= 1: the node's aggregate outgoing
/// rate is bounded by its upload capacity.
CapacityModel node_capacitated(const OverlayGraph& g, const std::map<NodeId, double>& caps);

/// Identity incidence: one row r_e <= C_e per edge.
CapacityModel edge_capacitated(const OverlayGraph& g, const std::map<EdgeId, double>& caps);

/// One row per physical link summing the rates of every overlay edge routed
/// across it.
CapacityModel physical_link_model(const OverlayGraph& g,
                                  const std::map<EdgeId, std::vector<long>>& routes,
                                  const std::map<long, double>& link_caps);

struct FeasibilityResult {
  bool feasible;
  double max_violation;  // max(0, largest positive residual)
};

FeasibilityResult feasible(const RateAllocation& r, const CapacityModel& m, double tol);

}  // namespace optcast
