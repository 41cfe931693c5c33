#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "satcg/colgen.hpp"
#include "satcg/master.hpp"
#include "satcg/route.hpp"
#include "satcg/scenario.hpp"

namespace satcg {

// Weighted objective of computing everything on the collecting satellite.
inline double solve_local_only(const Scenario& scenario) {
  double obj = 0.0;
  for (NodeId s = 1; s <= scenario.num_satellites(); ++s)
    obj += scenario.weight_local * std::min(scenario.demand(s), scenario.capacity(s));
  return obj;
}

inline double local_only_volume(const Scenario& scenario) {
  double v = 0.0;
  for (NodeId s = 1; s <= scenario.num_satellites(); ++s)
    v += std::min(scenario.demand(s), scenario.capacity(s));
  return v;
}

struct FullEnumerationSolution {
  double objective = 0.0;
  std::vector<double> x_local;
  RouteSets routes;
  std::vector<double> intersat_flow;  // aligned with routes.intersat
  std::vector<double> ground_flow;    // aligned with routes.ground
  DualPrices duals;
  std::size_t enumerated = 0;
};

// Exact reference: the LP over every feasible route. Intractable beyond desk
// scale, which is what the ceiling guards.
inline FullEnumerationSolution solve_full_enumeration(const Scenario& scenario,
                                                      std::size_t ceiling = kDefaultRouteCeiling,
                                                      const LpOptions& options = {}) {
  scenario.check();
  FullEnumerationSolution out;
  out.routes = enumerate_routes(scenario.topology, scenario.hops_intersat, scenario.hops_ground,
                                ceiling);
  out.enumerated = out.routes.total();

  ColumnPool pool;
  for (const Route& r : out.routes.intersat) pool.add(r);
  for (const Route& r : out.routes.ground) pool.add(r);
  const MasterSolution master = solve_rmp(scenario, pool, options);

  out.objective = master.objective;
  out.x_local = master.x_local;
  out.duals = master.duals;
  const std::size_t ni = out.routes.intersat.size();
  out.intersat_flow.assign(master.flows.begin(), master.flows.begin() + ni);
  out.ground_flow.assign(master.flows.begin() + ni, master.flows.end());
  return out;
}

struct OffloadSolution {
  double objective = 0.0;
  std::vector<double> x_local;
  std::vector<Route> routes;
  std::vector<double> flows;

  double volume_local() const {
    double v = 0.0;
    for (double x : x_local) v += x;
    return v;
  }
};

namespace detail {

class DfsOffloader {
 public:
  DfsOffloader(const Scenario& scenario) : sc_(scenario), topo_(scenario.topology) {
    const int ne = static_cast<int>(topo_.edges.size());
    rem_fwd_.resize(ne);
    rem_bwd_.resize(ne);
    for (int e = 0; e < ne; ++e) rem_fwd_[e] = rem_bwd_[e] = topo_.edges[e].capacity;
    rem_compute_ = sc_.compute_capacity;
  }

  OffloadSolution run() {
    OffloadSolution out;
    out.x_local.assign(sc_.num_satellites(), 0.0);
    // every satellite's own computation comes first; only spare capacity is
    // offloadable, so the result can never fall below local-only computing
    for (NodeId s = 1; s <= sc_.num_satellites(); ++s) {
      const double local = std::min(sc_.demand(s), rem_compute_[s - 1]);
      out.x_local[s - 1] = local;
      rem_compute_[s - 1] -= local;
    }
    for (NodeId s = 1; s <= sc_.num_satellites(); ++s) {
      residual_ = sc_.demand(s) - out.x_local[s - 1];
      if (residual_ <= kTiny) continue;
      out_ = &out;
      path_.assign(1, s);
      path_edges_.clear();
      on_path_.assign(topo_.num_nodes(), 0);
      on_path_[s] = 1;
      descend(s, 0);
    }
    out.objective = sc_.weight_local * out.volume_local();
    for (std::size_t i = 0; i < out.routes.size(); ++i)
      out.objective += (out.routes[i].kind == RouteKind::InterSatellite ? sc_.weight_intersat
                                                                        : sc_.weight_ground) *
                       out.flows[i];
    return out;
  }

 private:
  static constexpr double kTiny = 1e-12;

  double edge_headroom(int edge, NodeId from) const {
    if (topo_.duplex == DuplexMode::Shared) return rem_fwd_[edge];
    return topo_.edges[edge].u == from ? rem_fwd_[edge] : rem_bwd_[edge];
  }

  void take_edge(int edge, NodeId from, double amount) {
    if (topo_.duplex == DuplexMode::Shared) {
      rem_fwd_[edge] -= amount;
      rem_bwd_[edge] -= amount;
    } else if (topo_.edges[edge].u == from) {
      rem_fwd_[edge] -= amount;
    } else {
      rem_bwd_[edge] -= amount;
    }
  }

  double path_bottleneck() const {
    double cap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < path_edges_.size(); ++i)
      cap = std::min(cap, edge_headroom(path_edges_[i], path_[i]));
    return cap;
  }

  void send(double amount, RouteKind kind, NodeId tail_node, int tail_edge) {
    for (std::size_t i = 0; i < path_edges_.size(); ++i)
      take_edge(path_edges_[i], path_[i], amount);
    if (tail_edge >= 0) take_edge(tail_edge, path_.back(), amount);
    Route r{kind, path_};
    if (tail_node >= 0) r.vertices.push_back(tail_node);
    out_->routes.push_back(std::move(r));
    out_->flows.push_back(amount);
    residual_ -= amount;
  }

  // Arriving at `node` over `hops` ISL edges: offload into its compute,
  // then through its SGL, then recurse over ISL neighbors ascending.
  void descend(NodeId node, int hops) {
    if (hops >= 1 && hops <= sc_.hops_intersat && residual_ > kTiny) {
      const double q = std::min({residual_, path_bottleneck(), rem_compute_[node - 1]});
      if (q > kTiny) {
        rem_compute_[node - 1] -= q;
        send(q, RouteKind::InterSatellite, -1, -1);
      }
    }
    if (hops + 1 <= sc_.hops_ground && residual_ > kTiny && topo_.is_gateway(node)) {
      const auto e = topo_.edge_between(node, kGroundNode);
      const double q = std::min({residual_, path_bottleneck(), edge_headroom(*e, node)});
      if (q > kTiny) send(q, RouteKind::SatelliteToGround, kGroundNode, *e);
    }
    const int next_hops = hops + 1;
    if (next_hops > std::max(sc_.hops_intersat, sc_.hops_ground - 1)) return;
    for (const Neighbor& nb : topo_.neighbors(node)) {
      if (residual_ <= kTiny) return;
      if (topo_.edges[nb.edge].kind != EdgeKind::Isl) continue;
      if (on_path_[nb.node]) continue;
      if (std::min(path_bottleneck(), edge_headroom(nb.edge, node)) <= kTiny) continue;
      on_path_[nb.node] = 1;
      path_.push_back(nb.node);
      path_edges_.push_back(nb.edge);
      descend(nb.node, next_hops);
      path_edges_.pop_back();
      path_.pop_back();
      on_path_[nb.node] = 0;
    }
  }

  const Scenario& sc_;
  const Topology& topo_;
  std::vector<double> rem_fwd_, rem_bwd_;  // shared mode keeps both equal
  std::vector<double> rem_compute_;
  double residual_ = 0.0;
  OffloadSolution* out_ = nullptr;
  std::vector<NodeId> path_;
  std::vector<int> path_edges_;
  std::vector<char> on_path_;
};

}  // namespace detail

// Greedy benchmark: satellites in ascending index compute locally first and
// push residual demand depth-first (ground before deeper satellites,
// neighbors ascending), reserving link and compute capacity as it goes.
inline OffloadSolution solve_dfs(const Scenario& scenario) {
  scenario.check();
  return detail::DfsOffloader(scenario).run();
}

// Constraint-family check of an explicit solution; empty result = feasible.
inline std::vector<std::string> check_feasibility(const Scenario& scenario,
                                                  const std::vector<double>& x_local,
                                                  const std::vector<Route>& routes,
                                                  const std::vector<double>& flows,
                                                  double tol = 1e-9) {
  const Topology& topo = scenario.topology;
  std::vector<std::string> violations;
  const int ne = static_cast<int>(topo.edges.size());
  std::vector<double> load_fwd(ne, 0.0), load_bwd(ne, 0.0);
  std::vector<double> compute_load(scenario.num_satellites(), 0.0);
  std::vector<double> data_load(scenario.num_satellites(), 0.0);

  for (NodeId s = 1; s <= scenario.num_satellites(); ++s) {
    if (x_local[s - 1] < -tol) violations.push_back("negative local share");
    compute_load[s - 1] += x_local[s - 1];
    data_load[s - 1] += x_local[s - 1];
  }
  for (std::size_t i = 0; i < routes.size(); ++i) {
    const Route& r = routes[i];
    const double f = flows[i];
    if (f < -tol) violations.push_back("negative route flow");
    if (const auto why =
            route_violation(topo, r, scenario.hops_intersat, scenario.hops_ground)) {
      violations.push_back("invalid route: " + *why);
      continue;
    }
    const std::size_t sat_count =
        r.kind == RouteKind::SatelliteToGround ? r.vertices.size() - 1 : r.vertices.size();
    for (std::size_t k = 0; k + 1 < sat_count; ++k) {
      const auto e = topo.edge_between(r.vertices[k], r.vertices[k + 1]);
      (topo.edges[*e].u == r.vertices[k] ? load_fwd : load_bwd)[*e] += f;
    }
    if (r.kind == RouteKind::SatelliteToGround) {
      const auto e = topo.edge_between(r.gateway(), kGroundNode);
      load_fwd[*e] += f;
    } else {
      compute_load[r.terminal() - 1] += f;
    }
    data_load[r.source() - 1] += f;
  }

  const double slack = tol;
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = topo.edges[e];
    const double scale = 1.0 + ed.capacity;
    if (ed.kind == EdgeKind::Isl && topo.duplex == DuplexMode::Shared) {
      if (load_fwd[e] + load_bwd[e] > ed.capacity + slack * scale)
        violations.push_back("ISL capacity exceeded");
    } else if (load_fwd[e] > ed.capacity + slack * scale || load_bwd[e] > ed.capacity + slack * scale) {
      violations.push_back(ed.kind == EdgeKind::Isl ? "ISL capacity exceeded"
                                                    : "SGL capacity exceeded");
    }
  }
  for (NodeId s = 1; s <= scenario.num_satellites(); ++s) {
    if (compute_load[s - 1] > scenario.capacity(s) + slack * (1.0 + scenario.capacity(s)))
      violations.push_back("compute capacity exceeded at satellite " + std::to_string(s));
    if (data_load[s - 1] > scenario.demand(s) + slack * (1.0 + scenario.demand(s)))
      violations.push_back("data volume exceeded at satellite " + std::to_string(s));
  }
  return violations;
}

}  // namespace satcg
