#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "satcg/baselines.hpp"
#include "satcg/colgen.hpp"
#include "satcg/route.hpp"
#include "satcg/scenario.hpp"

namespace satcg {

namespace detail {

// Deterministic parallel map: results land at their index regardless of
// scheduling. Tasks must be independent and must not touch shared state.
template <typename Fn>
void parallel_for_index(int n, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = n > 0 ? std::min<unsigned>(hw, static_cast<unsigned>(n)) : 0u;
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers)) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

inline nlohmann::json result_to_json(const ColGenResult& r) {
  nlohmann::json j;
  j["converged"] = r.converged;
  if (!r.converged) j["stop_reason"] = r.stop_reason;
  j["objective"] = r.objective;
  j["dual_objective"] = r.dual_objective;
  j["iterations"] = r.iterations;
  j["wall_ms"] = r.wall_ms;
  j["volumes"] = {{"local", r.volume_local()},
                  {"intersat", r.volume_intersat()},
                  {"ground", r.volume_ground()},
                  {"total", r.volume_total()}};
  j["activated"] = {{"intersat", r.activated_intersat()}, {"ground", r.activated_ground()}};
  j["x_local"] = r.x_local;
  nlohmann::json routes = nlohmann::json::array();
  for (int i = 0; i < r.pool.size(); ++i) {
    const Route& route = r.pool.entries()[i];
    routes.push_back({{"kind", route.kind == RouteKind::InterSatellite ? "intersat" : "ground"},
                      {"vertices", route.vertices},
                      {"flow", r.flows[i]}});
  }
  j["routes"] = routes;
  nlohmann::json trace = nlohmann::json::array();
  for (const IterationRecord& t : r.trace)
    trace.push_back({{"iter", t.iteration},
                     {"n_columns", t.columns},
                     {"objective", t.objective},
                     {"n_violations_found", t.violations_found}});
  j["trace"] = trace;
  return j;
}

inline nlohmann::json result_to_json(const OffloadSolution& s) {
  nlohmann::json j;
  j["objective"] = s.objective;
  double vi = 0.0, vg = 0.0;
  nlohmann::json routes = nlohmann::json::array();
  for (std::size_t i = 0; i < s.routes.size(); ++i) {
    (s.routes[i].kind == RouteKind::InterSatellite ? vi : vg) += s.flows[i];
    routes.push_back({{"kind", s.routes[i].kind == RouteKind::InterSatellite ? "intersat" : "ground"},
                      {"vertices", s.routes[i].vertices},
                      {"flow", s.flows[i]}});
  }
  j["volumes"] = {{"local", s.volume_local()},
                  {"intersat", vi},
                  {"ground", vg},
                  {"total", s.volume_local() + vi + vg}};
  j["x_local"] = s.x_local;
  j["routes"] = routes;
  return j;
}

// ---------------------------------------------------------------------------
// CSV emission. Every table starts with a versioned schema comment followed
// by the header row.

inline void write_csv_preamble(std::ostream& os, const std::string& schema,
                               const std::string& header) {
  os << "# schema: satcg." << schema << ".v1\n" << header << "\n";
}

struct EnumerationRow {
  int hs = 0, hg = 0;
  std::size_t n_intersat = 0, n_ground = 0;

  std::size_t total() const { return n_intersat + n_ground; }
};

inline std::vector<EnumerationRow> run_enumeration_counts(const Topology& topo, int h_max,
                                                          std::size_t ceiling = kDefaultRouteCeiling) {
  std::vector<EnumerationRow> rows(h_max);
  for (int h = 1; h <= h_max; ++h) {
    const RouteSets sets = enumerate_routes(topo, h, h, ceiling);
    rows[h - 1] = {h, h, sets.intersat.size(), sets.ground.size()};
  }
  return rows;
}

inline void write_enumeration_csv(std::ostream& os, const std::vector<EnumerationRow>& rows) {
  write_csv_preamble(os, "enumerate", "hs,hg,n_intersat,n_ground,total");
  for (const EnumerationRow& r : rows)
    os << r.hs << ',' << r.hg << ',' << r.n_intersat << ',' << r.n_ground << ',' << r.total()
       << "\n";
}

inline void write_trace_csv(std::ostream& os, const ColGenResult& result) {
  write_csv_preamble(os, "trace", "iter,n_columns,objective,n_violations_found");
  for (const IterationRecord& t : result.trace)
    os << t.iteration << ',' << t.columns << ',' << t.objective << ',' << t.violations_found
       << "\n";
}

struct Table2Row {
  int hs = 0, hg = 0;
  std::size_t enumerated = 0;
  int activated = 0;
  double reduction_pct = 0.0;
  double objective = 0.0;
};

// Scale-reduction table: enumerated route universe vs columns activated by
// column generation, per hop limit.
inline std::vector<Table2Row> run_table2(const Scenario& scenario, int h_max,
                                         const ColGenOptions& options = {}) {
  std::vector<Table2Row> rows(h_max);
  detail::parallel_for_index(h_max, [&](int i) {
    const int h = i + 1;
    Scenario sc = scenario;
    sc.hops_intersat = h;
    sc.hops_ground = h;
    const RouteSets sets = enumerate_routes(sc.topology, h, h, options.route_ceiling);
    const ColGenResult result = run_column_generation(sc, options);
    const int activated = result.pool.size();
    const double reduction =
        sets.total() == 0 ? 0.0
                          : 100.0 * (1.0 - static_cast<double>(activated) /
                                               static_cast<double>(sets.total()));
    rows[i] = {h, h, sets.total(), activated, reduction, result.objective};
  });
  return rows;
}

inline void write_table2_csv(std::ostream& os, const std::vector<Table2Row>& rows) {
  write_csv_preamble(os, "table2", "hs,hg,enumerated,activated,reduction_pct,objective");
  for (const Table2Row& r : rows)
    os << r.hs << ',' << r.hg << ',' << r.enumerated << ',' << r.activated << ','
       << r.reduction_pct << ',' << r.objective << "\n";
}

struct HopSweepRow {
  int h = 0;
  double objective_mean = 0.0;
  double volume_local_mean = 0.0;
  double volume_intersat_mean = 0.0;
  double volume_ground_mean = 0.0;
  double volume_total_mean = 0.0;
};

// Mean objective and per-layer computed volumes over seeds, per hop limit.
// h = 0 degenerates to local-only computing.
inline std::vector<HopSweepRow> run_hop_sweep(const Scenario& scenario,
                                              const std::vector<int>& h_values,
                                              const std::vector<std::uint64_t>& seeds,
                                              const ColGenOptions& options = {}) {
  const int n = static_cast<int>(h_values.size() * seeds.size());
  std::vector<ColGenResult> results(n);
  detail::parallel_for_index(n, [&](int i) {
    const int h = h_values[i / seeds.size()];
    Scenario sc = with_seed(scenario, seeds[i % seeds.size()]);
    sc.hops_intersat = h;
    sc.hops_ground = h;
    results[i] = run_column_generation(sc, options);
  });

  std::vector<HopSweepRow> rows;
  for (std::size_t hi = 0; hi < h_values.size(); ++hi) {
    HopSweepRow row;
    row.h = h_values[hi];
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const ColGenResult& r = results[hi * seeds.size() + si];
      row.objective_mean += r.objective;
      row.volume_local_mean += r.volume_local();
      row.volume_intersat_mean += r.volume_intersat();
      row.volume_ground_mean += r.volume_ground();
      row.volume_total_mean += r.volume_total();
    }
    const double k = static_cast<double>(seeds.size());
    row.objective_mean /= k;
    row.volume_local_mean /= k;
    row.volume_intersat_mean /= k;
    row.volume_ground_mean /= k;
    row.volume_total_mean /= k;
    rows.push_back(row);
  }
  return rows;
}

inline void write_hop_sweep_csv(std::ostream& os, const std::vector<HopSweepRow>& rows) {
  write_csv_preamble(os, "hop_sweep",
                     "h,objective_mean,volume_local_mean,volume_intersat_mean,"
                     "volume_ground_mean,volume_total_mean");
  for (const HopSweepRow& r : rows)
    os << r.h << ',' << r.objective_mean << ',' << r.volume_local_mean << ','
       << r.volume_intersat_mean << ',' << r.volume_ground_mean << ',' << r.volume_total_mean
       << "\n";
}

struct DemandSweepRow {
  double mean = 0.0;
  double colgen_objective_mean = 0.0;
  double dfs_objective_mean = 0.0;
  double local_objective_mean = 0.0;
};

// Objective versus demand scale: column generation against the greedy and
// local-only baselines, averaged over seeds.
inline std::vector<DemandSweepRow> run_demand_sweep(const Scenario& scenario,
                                                    const std::vector<double>& means,
                                                    const std::vector<std::uint64_t>& seeds,
                                                    const ColGenOptions& options = {}) {
  const int n = static_cast<int>(means.size() * seeds.size());
  struct Point {
    double colgen = 0.0, dfs = 0.0, local = 0.0;
  };
  std::vector<Point> points(n);
  detail::parallel_for_index(n, [&](int i) {
    Scenario sc = with_demand_mean(scenario, means[i / seeds.size()]);
    sc = with_seed(std::move(sc), seeds[i % seeds.size()]);
    points[i] = {run_column_generation(sc, options).objective, solve_dfs(sc).objective,
                 solve_local_only(sc)};
  });

  std::vector<DemandSweepRow> rows;
  for (std::size_t mi = 0; mi < means.size(); ++mi) {
    DemandSweepRow row;
    row.mean = means[mi];
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const Point& p = points[mi * seeds.size() + si];
      row.colgen_objective_mean += p.colgen;
      row.dfs_objective_mean += p.dfs;
      row.local_objective_mean += p.local;
    }
    const double k = static_cast<double>(seeds.size());
    row.colgen_objective_mean /= k;
    row.dfs_objective_mean /= k;
    row.local_objective_mean /= k;
    rows.push_back(row);
  }
  return rows;
}

inline void write_demand_sweep_csv(std::ostream& os, const std::vector<DemandSweepRow>& rows) {
  write_csv_preamble(os, "demand_sweep",
                     "mean,colgen_objective_mean,dfs_objective_mean,local_objective_mean");
  for (const DemandSweepRow& r : rows)
    os << r.mean << ',' << r.colgen_objective_mean << ',' << r.dfs_objective_mean << ','
       << r.local_objective_mean << "\n";
}

}  // namespace satcg
