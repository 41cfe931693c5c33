#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "satcg/master.hpp"
#include "satcg/pricing.hpp"
#include "satcg/route.hpp"
#include "satcg/scenario.hpp"

namespace satcg {

struct ColGenOptions {
  double pricing_tol = 1e-7;
  int max_iterations = 500;
  bool seed_one_hop_routes = false;  // start from all 1-hop routes instead of empty
  LpOptions lp;
  std::size_t route_ceiling = kDefaultRouteCeiling;  // guards seeding/audit enumeration
};

struct IterationRecord {
  int iteration = 0;
  int columns = 0;  // master variables: locals + pooled routes
  double objective = 0.0;
  int violations_found = 0;
};

struct ColGenResult {
  bool converged = false;
  std::string stop_reason;  // set when converged == false
  double objective = 0.0;
  double dual_objective = 0.0;
  std::vector<double> x_local;
  ColumnPool pool;
  std::vector<double> flows;  // aligned with pool entries
  DualPrices final_duals;
  LpBasis final_basis;
  std::vector<IterationRecord> trace;
  int iterations = 0;
  double wall_ms = 0.0;

  int activated_intersat() const { return pool.count(RouteKind::InterSatellite); }
  int activated_ground() const { return pool.count(RouteKind::SatelliteToGround); }

  double volume_local() const {
    double v = 0.0;
    for (double x : x_local) v += x;
    return v;
  }
  double volume_intersat() const { return volume_of(RouteKind::InterSatellite); }
  double volume_ground() const { return volume_of(RouteKind::SatelliteToGround); }
  double volume_total() const { return volume_local() + volume_intersat() + volume_ground(); }

 private:
  double volume_of(RouteKind kind) const {
    double v = 0.0;
    for (int i = 0; i < pool.size(); ++i)
      if (pool.entries()[i].kind == kind) v += flows[i];
    return v;
  }
};

namespace detail {

inline double dual_objective_value(const Scenario& sc, const RmpLayout& layout,
                                   const DualPrices& d) {
  const Topology& topo = sc.topology;
  double obj = 0.0;
  for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e) {
    const Edge& ed = topo.edges[e];
    if (ed.kind == EdgeKind::Isl) {
      obj += ed.capacity * d.alpha_fwd[e];
      if (layout.isl_row_bwd[e] != layout.isl_row_fwd[e]) obj += ed.capacity * d.alpha_bwd[e];
    } else {
      obj += ed.capacity * d.beta[e];
    }
  }
  for (NodeId s = 1; s <= topo.num_satellites; ++s)
    obj += sc.demand(s) * d.gamma_of(s) + sc.capacity(s) * d.zeta_of(s);
  return obj;
}

}  // namespace detail

// Alternates master solves with violation pricing until no route's dual
// constraint is violated, which certifies the master optimum as globally
// optimal over the full route universe.
inline ColGenResult run_column_generation(const Scenario& scenario, const ColGenOptions& options = {}) {
  scenario.check();
  if (options.max_iterations < 1)
    throw std::invalid_argument("colgen: max_iterations must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();

  ColGenResult result;
  const RmpLayout layout = make_rmp_layout(scenario.topology);
  if (options.seed_one_hop_routes) {
    const RouteSets seed = enumerate_routes(scenario.topology, scenario.hops_intersat >= 1 ? 1 : 0,
                                            scenario.hops_ground >= 1 ? 1 : 0, options.route_ceiling);
    add_columns(result.pool, scenario, seed.intersat);
    add_columns(result.pool, scenario, seed.ground);
  }

  double pricing_tol = options.pricing_tol;
  int tightenings = 0;
  int flat_run = 0;
  double last_objective = 0.0;
  LpBasis warm;
  bool have_warm = false;
  MasterSolution master;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    master = solve_rmp(scenario, result.pool, layout, options.lp, have_warm ? &warm : nullptr);
    warm = master.basis;
    have_warm = true;

    std::vector<Route> violating = find_violating_intersat(
        scenario.topology, master.duals, scenario.weight_intersat, scenario.hops_intersat, pricing_tol);
    {
      std::vector<Route> ground = find_violating_ground(
          scenario.topology, master.duals, scenario.weight_ground, scenario.hops_ground, pricing_tol);
      violating.insert(violating.end(), std::make_move_iterator(ground.begin()),
                       std::make_move_iterator(ground.end()));
    }

    result.trace.push_back({iter, scenario.num_satellites() + result.pool.size(), master.objective,
                            static_cast<int>(violating.size())});
    result.iterations = iter;

    if (violating.empty()) {
      result.converged = true;
      break;
    }

    if (iter > 1 && master.objective - last_objective < options.lp.optimality_tol * (1.0 + std::fabs(master.objective))) {
      if (++flat_run >= 5) {
        pricing_tol *= 10.0;
        flat_run = 0;
        if (++tightenings > 3) {
          result.stop_reason = "stalled: no objective progress after 3 pricing tightenings";
          break;
        }
      }
    } else {
      flat_run = 0;
    }
    last_objective = master.objective;

    if (add_columns(result.pool, scenario, violating) == 0) {
      // pooled columns cannot violate at pricing_tol > LP tolerance
      result.stop_reason = "pricing regenerated only pooled columns";
      break;
    }
  }

  if (!result.converged && result.stop_reason.empty())
    result.stop_reason = "iteration limit reached";

  result.objective = master.objective;
  result.x_local = master.x_local;
  result.flows = master.flows;
  result.final_duals = master.duals;
  result.final_basis = std::move(master.basis);
  result.dual_objective = detail::dual_objective_value(scenario, layout, master.duals);
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

// ---------------------------------------------------------------------------
// Post-hoc optimality audit over the full enumerated route universe.

struct AuditViolation {
  Route route;
  double lhs = 0.0;  // dual-weighted column value
  double rhs = 0.0;  // objective weight of the route class
};

struct AuditReport {
  bool performed = false;
  std::string notice;  // set when skipped
  std::size_t routes_checked = 0;
  std::vector<AuditViolation> violations;

  bool clean() const { return performed && violations.empty(); }
};

// Dual-feasibility check of every route in `sets` against `duals`.
inline AuditReport check_dual_feasibility(const Scenario& scenario, const DualPrices& duals,
                                          const RouteSets& sets, double tol = 1e-7) {
  const Topology& topo = scenario.topology;
  AuditReport report;
  report.performed = true;
  report.routes_checked = sets.total();

  const auto path_weight = [&](const Route& r) {
    double w = 0.0;
    const std::size_t sat_count =
        r.kind == RouteKind::SatelliteToGround ? r.vertices.size() - 1 : r.vertices.size();
    for (std::size_t i = 0; i + 1 < sat_count; ++i) {
      const auto e = topo.edge_between(r.vertices[i], r.vertices[i + 1]);
      w += duals.alpha(topo, *e, r.vertices[i]);
    }
    return w;
  };

  for (const Route& r : sets.intersat) {
    const double lhs = path_weight(r) + duals.gamma_of(r.source()) + duals.zeta_of(r.terminal());
    if (lhs < scenario.weight_intersat - tol)
      report.violations.push_back({r, lhs, scenario.weight_intersat});
  }
  for (const Route& r : sets.ground) {
    const auto e = topo.edge_between(r.gateway(), kGroundNode);
    const double lhs = path_weight(r) + duals.beta[*e] + duals.gamma_of(r.source());
    if (lhs < scenario.weight_ground - tol)
      report.violations.push_back({r, lhs, scenario.weight_ground});
  }
  return report;
}

// Re-derives duals from the final master over the result's pool (restarted
// from the final basis, so the re-solve lands on the certified dual vertex)
// and verifies them against every feasible route. Skipped (with notice) when
// enumeration would exceed the ceiling.
inline AuditReport audit_optimality(const Scenario& scenario, const ColGenResult& result,
                                    double tol = 1e-7,
                                    std::size_t ceiling = kDefaultRouteCeiling) {
  RouteSets universe;
  try {
    universe = enumerate_routes(scenario.topology, scenario.hops_intersat, scenario.hops_ground,
                                ceiling);
  } catch (const EnumerationCeilingError& e) {
    AuditReport skipped;
    skipped.notice = std::string("audit skipped: ") + e.what();
    return skipped;
  }
  const RmpLayout layout = make_rmp_layout(scenario.topology);
  const LpBasis* warm = result.final_basis.rows.empty() ? nullptr : &result.final_basis;
  const MasterSolution master = solve_rmp(scenario, result.pool, layout, {}, warm);
  return check_dual_feasibility(scenario, master.duals, universe, tol);
}

}  // namespace satcg
