#pragma once

#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "satcg/lp.hpp"
#include "satcg/route.hpp"
#include "satcg/scenario.hpp"

namespace satcg {

// Activated routes in insertion order. Variable indices in the master LP are
// stable across growth: local variables first, then pool entries as added.
class ColumnPool {
 public:
  bool add(Route route) {
    if (!seen_.insert(route).second) return false;
    entries_.push_back(std::move(route));
    return true;
  }

  bool contains(const Route& r) const { return seen_.count(r) > 0; }
  const std::vector<Route>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }

  int count(RouteKind kind) const {
    int n = 0;
    for (const Route& r : entries_) n += r.kind == kind ? 1 : 0;
    return n;
  }

 private:
  std::vector<Route> entries_;
  std::unordered_set<Route, RouteHash> seen_;
};

// Validates against the scenario's topology and hop limits; duplicates are
// skipped. Returns the number of routes actually inserted.
inline int add_columns(ColumnPool& pool, const Scenario& scenario, const std::vector<Route>& routes) {
  int added = 0;
  for (const Route& r : routes) {
    if (const auto why =
            route_violation(scenario.topology, r, scenario.hops_intersat, scenario.hops_ground))
      throw std::invalid_argument("add_columns: " + *why);
    added += pool.add(r) ? 1 : 0;
  }
  return added;
}

// Duals of the master rows under their model names. ISL values are stored
// per traversal direction; in shared duplex mode both directions alias one
// row and carry equal values.
struct DualPrices {
  std::vector<double> alpha_fwd;  // ISL edge e traversed u->v (as stored)
  std::vector<double> alpha_bwd;  // ISL edge e traversed v->u
  std::vector<double> beta;       // per edge index, SGL entries only
  std::vector<double> gamma;      // per satellite, data constraint
  std::vector<double> zeta;       // per satellite, compute constraint

  double alpha(const Topology& topo, int edge, NodeId from) const {
    return topo.edges[edge].u == from ? alpha_fwd[edge] : alpha_bwd[edge];
  }
  double gamma_of(NodeId sat) const { return gamma[sat - 1]; }
  double zeta_of(NodeId sat) const { return zeta[sat - 1]; }
};

// Fixed row layout of the master LP: ISL capacity rows (one per edge, or one
// per direction in full duplex), SGL capacity rows, per-satellite compute
// rows, per-satellite data rows. Only columns are appended across solves.
struct RmpLayout {
  std::vector<int> isl_row_fwd;  // per edge index; -1 for SGL edges
  std::vector<int> isl_row_bwd;
  std::vector<int> sgl_row;  // per edge index; -1 for ISL edges
  int compute_row_base = 0;
  int data_row_base = 0;
  int num_rows = 0;

  int compute_row(NodeId sat) const { return compute_row_base + sat - 1; }
  int data_row(NodeId sat) const { return data_row_base + sat - 1; }
};

inline RmpLayout make_rmp_layout(const Topology& topo) {
  RmpLayout layout;
  const int ne = static_cast<int>(topo.edges.size());
  layout.isl_row_fwd.assign(ne, -1);
  layout.isl_row_bwd.assign(ne, -1);
  layout.sgl_row.assign(ne, -1);
  int row = 0;
  for (int e = 0; e < ne; ++e) {
    if (topo.edges[e].kind != EdgeKind::Isl) continue;
    layout.isl_row_fwd[e] = row++;
    layout.isl_row_bwd[e] = topo.duplex == DuplexMode::FullDuplex ? row++ : layout.isl_row_fwd[e];
  }
  for (int e = 0; e < ne; ++e)
    if (topo.edges[e].kind == EdgeKind::Sgl) layout.sgl_row[e] = row++;
  layout.compute_row_base = row;
  row += topo.num_satellites;
  layout.data_row_base = row;
  row += topo.num_satellites;
  layout.num_rows = row;
  return layout;
}

namespace detail {

inline std::vector<std::pair<int, double>> route_column(const Topology& topo,
                                                        const RmpLayout& layout, const Route& r) {
  std::vector<std::pair<int, double>> col;
  const auto bump = [&col](int row) {
    for (auto& [rr, v] : col)
      if (rr == row) {
        v += 1.0;
        return;
      }
    col.emplace_back(row, 1.0);
  };

  const std::size_t sat_count =
      r.kind == RouteKind::SatelliteToGround ? r.vertices.size() - 1 : r.vertices.size();
  for (std::size_t i = 0; i + 1 < sat_count; ++i) {
    const NodeId from = r.vertices[i];
    const auto e = topo.edge_between(from, r.vertices[i + 1]);
    if (!e || topo.edges[*e].kind != EdgeKind::Isl)
      throw std::invalid_argument("rmp: route references an unknown ISL edge");
    bump(topo.edges[*e].u == from ? layout.isl_row_fwd[*e] : layout.isl_row_bwd[*e]);
  }
  if (r.kind == RouteKind::SatelliteToGround) {
    const auto e = topo.edge_between(r.gateway(), kGroundNode);
    if (!e || topo.edges[*e].kind != EdgeKind::Sgl)
      throw std::invalid_argument("rmp: route references an unknown SGL edge");
    bump(layout.sgl_row[*e]);
  } else {
    bump(layout.compute_row(r.terminal()));
  }
  bump(layout.data_row(r.source()));
  return col;
}

}  // namespace detail

// One variable per local share and per pooled route; one row per link
// capacity, per-satellite compute bound, and per-satellite data bound.
inline LpProblem build_rmp(const Scenario& scenario, const ColumnPool& pool,
                           const RmpLayout& layout) {
  const Topology& topo = scenario.topology;
  LpProblem lp;
  lp.rhs.assign(layout.num_rows, 0.0);
  for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e) {
    const Edge& ed = topo.edges[e];
    if (ed.kind == EdgeKind::Isl) {
      lp.rhs[layout.isl_row_fwd[e]] = ed.capacity;
      lp.rhs[layout.isl_row_bwd[e]] = ed.capacity;
    } else {
      lp.rhs[layout.sgl_row[e]] = ed.capacity;
    }
  }
  for (NodeId s = 1; s <= topo.num_satellites; ++s) {
    lp.rhs[layout.compute_row(s)] = scenario.capacity(s);
    lp.rhs[layout.data_row(s)] = scenario.demand(s);
  }

  for (NodeId s = 1; s <= topo.num_satellites; ++s)
    lp.add_variable(scenario.weight_local,
                    {{layout.compute_row(s), 1.0}, {layout.data_row(s), 1.0}});
  for (const Route& r : pool.entries())
    lp.add_variable(r.kind == RouteKind::InterSatellite ? scenario.weight_intersat
                                                        : scenario.weight_ground,
                    detail::route_column(topo, layout, r));
  return lp;
}

inline LpProblem build_rmp(const Scenario& scenario, const ColumnPool& pool) {
  return build_rmp(scenario, pool, make_rmp_layout(scenario.topology));
}

struct MasterSolution {
  double objective = 0.0;
  std::vector<double> x_local;  // per satellite
  std::vector<double> flows;    // per pool entry, insertion order
  DualPrices duals;
  LpBasis basis;
  int lp_iterations = 0;
};

inline DualPrices extract_duals(const Topology& topo, const RmpLayout& layout,
                                const std::vector<double>& y) {
  // Optimal duals of the max/<= problem are nonnegative up to rounding; snap
  // the rounding-level negatives so downstream weight checks stay strict.
  const auto snap = [](double v) {
    if (v < 0.0) {
      if (v < -1e-7) throw std::runtime_error("rmp: significantly negative dual value");
      return 0.0;
    }
    return v;
  };
  DualPrices d;
  const int ne = static_cast<int>(topo.edges.size());
  d.alpha_fwd.assign(ne, 0.0);
  d.alpha_bwd.assign(ne, 0.0);
  d.beta.assign(ne, 0.0);
  for (int e = 0; e < ne; ++e) {
    if (topo.edges[e].kind == EdgeKind::Isl) {
      d.alpha_fwd[e] = snap(y[layout.isl_row_fwd[e]]);
      d.alpha_bwd[e] = snap(y[layout.isl_row_bwd[e]]);
    } else {
      d.beta[e] = snap(y[layout.sgl_row[e]]);
    }
  }
  d.gamma.resize(topo.num_satellites);
  d.zeta.resize(topo.num_satellites);
  for (NodeId s = 1; s <= topo.num_satellites; ++s) {
    d.zeta[s - 1] = snap(y[layout.compute_row(s)]);
    d.gamma[s - 1] = snap(y[layout.data_row(s)]);
  }
  return d;
}

inline MasterSolution solve_rmp(const Scenario& scenario, const ColumnPool& pool,
                                const RmpLayout& layout, const LpOptions& options = {},
                                const LpBasis* warm_start = nullptr) {
  const LpProblem lp = build_rmp(scenario, pool, layout);
  LpSolution sol = solve(lp, options, warm_start);
  if (sol.status == LpStatus::IterationLimit && warm_start != nullptr)
    sol = solve(lp, options);  // cold retry
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error(std::string("rmp: LP solve returned ") + to_string(sol.status));

  MasterSolution ms;
  ms.objective = sol.objective;
  const int n = scenario.num_satellites();
  ms.x_local.assign(sol.x.begin(), sol.x.begin() + n);
  ms.flows.assign(sol.x.begin() + n, sol.x.end());
  ms.duals = extract_duals(scenario.topology, layout, sol.duals);
  ms.basis = std::move(sol.basis);
  ms.lp_iterations = sol.iterations;
  return ms;
}

inline MasterSolution solve_rmp(const Scenario& scenario, const ColumnPool& pool,
                                const LpOptions& options = {}) {
  return solve_rmp(scenario, pool, make_rmp_layout(scenario.topology), options);
}

}  // namespace satcg
