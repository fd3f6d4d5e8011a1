#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "optcast/capacity.hpp"
#include "optcast/content.hpp"
#include "optcast/dynamics.hpp"
#include "optcast/experiments.hpp"
#include "optcast/graph.hpp"

namespace optcast {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Line-oriented scenario text. Graph section: `nodes <n> source <s>`,
/// `edge <u> <v>`, optional `coord <id> <row> <col>`. Capacity section (one
/// kind per scenario): `nodecap <v> <C>` | `edgecap <u> <v> <C>` |
/// `route <u> <v> <link>` with `linkcap <link> <C>`. Blank lines and
/// `#` comments are ignored. Graph and capacity may live in one file or be
/// parsed from separate files into the same accumulator.
class ScenarioParser {
 public:
  void parse_file(const std::string& path);
  void parse_stream(std::istream& in, const std::string& origin);

  struct Result {
    OverlayGraph graph;
    std::optional<GridLayout> layout;
    std::optional<CapacityModel> model;
  };

  /// Assembles and validates; requires a graph section. require_model adds
  /// a check that some capacity lines were present.
  Result build(bool require_model) const;

 private:
  bool have_header_ = false;
  int nodes_ = 0;
  NodeId source_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::tuple<NodeId, int, int>> coords_;
  std::vector<std::pair<NodeId, double>> nodecaps_;
  std::vector<std::tuple<NodeId, NodeId, double>> edgecaps_;
  std::vector<std::tuple<NodeId, NodeId, long>> routes_;
  std::vector<std::pair<long, double>> linkcaps_;
};

void write_scenario(std::ostream& out, const OverlayGraph& g, const GridLayout* layout,
                    const CapacityModel* model);
void write_scenario_file(const std::string& path, const OverlayGraph& g, const GridLayout* layout,
                         const CapacityModel* model);

/// `slot,z,max_cap_violation,min_margin` rows.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// `node,packets_received,measured_rate,target_rate,ratio` rows.
void write_packet_report_csv(std::ostream& out, const PacketSimReport& report);

/// `label,nodes,converged,convergence_slots,z_final,reference,rel_error` rows.
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceReport>& reports);

/// Shortest round-trip decimal rendering used by every CSV writer, so
/// identical runs emit byte-identical files.
std::string format_double(double v);

}  // namespace optcast
