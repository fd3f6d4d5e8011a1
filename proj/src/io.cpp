#include "optcast/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace optcast {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void ScenarioParser::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  parse_stream(in, path);
}

void ScenarioParser::parse_stream(std::istream& in, const std::string& origin) {
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;

    auto fail = [&](const std::string& why) {
      throw ParseError(origin + ":" + std::to_string(lineno) + ": " + why);
    };
    auto need = [&](auto&... field) {
      if (!((ls >> field) && ...)) fail("malformed '" + kw + "' line");
    };

    if (kw == "nodes") {
      std::string src_kw;
      int n = 0;
      NodeId s = 0;
      if (!(ls >> n >> src_kw >> s) || src_kw != "source") fail("expected 'nodes <n> source <s>'");
      if (have_header_) fail("duplicate 'nodes' line");
      have_header_ = true;
      nodes_ = n;
      source_ = s;
    } else if (kw == "edge") {
      NodeId u = 0, v = 0;
      need(u, v);
      edges_.emplace_back(u, v);
    } else if (kw == "coord") {
      NodeId id = 0;
      int row = 0, col = 0;
      need(id, row, col);
      coords_.emplace_back(id, row, col);
    } else if (kw == "nodecap") {
      NodeId v = 0;
      double c = 0;
      need(v, c);
      nodecaps_.emplace_back(v, c);
    } else if (kw == "edgecap") {
      NodeId u = 0, v = 0;
      double c = 0;
      need(u, v, c);
      edgecaps_.emplace_back(u, v, c);
    } else if (kw == "route") {
      NodeId u = 0, v = 0;
      long l = 0;
      need(u, v, l);
      routes_.emplace_back(u, v, l);
    } else if (kw == "linkcap") {
      long l = 0;
      double c = 0;
      need(l, c);
      linkcaps_.emplace_back(l, c);
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
}

ScenarioParser::Result ScenarioParser::build(bool require_model) const {
  if (!have_header_) throw ParseError("missing 'nodes <n> source <s>' line");
  OverlayGraph graph(nodes_, edges_, source_);

  std::optional<GridLayout> layout;
  if (!coords_.empty()) {
    // Coordinates are only meaningful for full row-major grids.
    int max_row = 0;
    for (const auto& [id, row, col] : coords_) max_row = std::max({max_row, row, col});
    const int side = max_row + 1;
    if (side * side == nodes_) {
      bool row_major = true;
      for (const auto& [id, row, col] : coords_)
        if (id != row * side + col) row_major = false;
      if (row_major) layout = GridLayout{side};
    }
    if (!layout) throw ParseError("coord lines do not describe a row-major square grid");
  }

  const int kinds = (nodecaps_.empty() ? 0 : 1) + (edgecaps_.empty() ? 0 : 1) +
                    ((routes_.empty() && linkcaps_.empty()) ? 0 : 1);
  if (kinds > 1) throw ParseError("capacity kinds may not be mixed in one scenario");
  if (require_model && kinds == 0) throw ParseError("scenario has no capacity section");

  auto edge_id = [&graph](NodeId u, NodeId v) {
    for (EdgeId e : graph.out_edges(u))
      if (graph.edge(e).to == v) return e;
    throw ParseError("capacity line references missing edge (" + std::to_string(u) + "," +
                     std::to_string(v) + ")");
  };

  std::optional<CapacityModel> model;
  if (!nodecaps_.empty()) {
    std::map<NodeId, double> caps;
    for (const auto& [v, c] : nodecaps_) caps[v] = c;
    model = node_capacitated(graph, caps);
  } else if (!edgecaps_.empty()) {
    std::map<EdgeId, double> caps;
    for (const auto& [u, v, c] : edgecaps_) caps[edge_id(u, v)] = c;
    model = edge_capacitated(graph, caps);
  } else if (kinds == 1) {
    std::map<EdgeId, std::vector<long>> routes;
    for (const auto& [u, v, l] : routes_) routes[edge_id(u, v)].push_back(l);
    std::map<long, double> caps;
    for (const auto& [l, c] : linkcaps_) caps[l] = c;
    model = physical_link_model(graph, routes, caps);
  }
  return {std::move(graph), layout, std::move(model)};
}

void write_scenario(std::ostream& out, const OverlayGraph& g, const GridLayout* layout,
                    const CapacityModel* model) {
  out << "nodes " << g.node_count() << " source " << g.source() << "\n";
  for (const Edge& e : g.edges()) out << "edge " << e.from << " " << e.to << "\n";
  if (layout) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const auto [row, col] = layout->coord_of(v);
      out << "coord " << v << " " << row << " " << col << "\n";
    }
  }
  if (!model) return;
  const auto& keys = model->row_keys();
  switch (model->kind()) {
    case CapacityKind::NodeCap:
      for (int k = 0; k < model->constraint_count(); ++k)
        out << "nodecap " << keys[static_cast<std::size_t>(k)] << " "
            << format_double(model->bounds()[k]) << "\n";
      break;
    case CapacityKind::EdgeCap:
      for (int k = 0; k < model->constraint_count(); ++k) {
        const Edge& e = g.edge(static_cast<EdgeId>(keys[static_cast<std::size_t>(k)]));
        out << "edgecap " << e.from << " " << e.to << " " << format_double(model->bounds()[k])
            << "\n";
      }
      break;
    case CapacityKind::PhysicalLink:
    case CapacityKind::General: {
      const auto& rows = model->rows();
      for (int e = 0; e < rows.cols(); ++e)
        for (Eigen::SparseMatrix<double>::InnerIterator it(rows, e); it; ++it) {
          const Edge& ed = g.edge(static_cast<EdgeId>(e));
          out << "route " << ed.from << " " << ed.to << " "
              << keys[static_cast<std::size_t>(it.row())] << "\n";
        }
      for (int k = 0; k < model->constraint_count(); ++k)
        out << "linkcap " << keys[static_cast<std::size_t>(k)] << " "
            << format_double(model->bounds()[k]) << "\n";
      break;
    }
  }
}

void write_scenario_file(const std::string& path, const OverlayGraph& g, const GridLayout* layout,
                         const CapacityModel* model) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_scenario(out, g, layout, model);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "slot,z,max_cap_violation,min_margin\n";
  for (const SlotSample& s : traj.samples)
    out << s.slot << "," << format_double(s.z) << "," << format_double(s.max_cap_violation) << ","
        << format_double(s.min_margin) << "\n";
}

void write_packet_report_csv(std::ostream& out, const PacketSimReport& report) {
  out << "node,packets_received,measured_rate,target_rate,ratio\n";
  for (const NodeRate& n : report.per_node)
    out << n.node << "," << n.packets_in_window << "," << format_double(n.measured_rate) << ","
        << format_double(n.target_rate) << "," << format_double(n.ratio) << "\n";
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceReport>& reports) {
  out << "label,nodes,converged,convergence_slots,z_final,reference,rel_error\n";
  for (const ConvergenceReport& r : reports)
    out << r.label << "," << r.node_count << "," << (r.converged ? 1 : 0) << ","
        << r.convergence_time_slots << "," << format_double(r.z_final) << ","
        << format_double(r.reference) << "," << format_double(r.relative_error) << "\n";
}

}  // namespace optcast
