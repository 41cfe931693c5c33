// Experiment runner around the library: topology/scenario I/O, the exact and
// heuristic solvers, and the benchmark sweeps, emitting CSV or JSON.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satcg/satcg.hpp"

namespace {

struct CommonOpts {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> hs, hg;
  std::string out_path;
  std::string format = "csv";
  std::size_t ceiling = satcg::kDefaultRouteCeiling;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
  cmd->add_option("--scenario", o.scenario_path, "scenario JSON file (default: built-in benchmark)");
  cmd->add_option("--seed", o.seed, "demand seed override");
  cmd->add_option("--hs", o.hs, "inter-satellite hop limit override");
  cmd->add_option("--hg", o.hg, "satellite-to-ground hop limit override");
  cmd->add_option("--out", o.out_path, "output path (default: stdout)");
  if (with_format)
    cmd->add_option("--format", o.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--enumeration-ceiling", o.ceiling, "route enumeration guard");
}

satcg::Scenario resolve_scenario(const CommonOpts& o) {
  satcg::Scenario sc = o.scenario_path.empty()
                           ? satcg::make_reference_scenario(o.seed.value_or(1), 5, 5)
                           : satcg::load_scenario_file(o.scenario_path);
  if (!o.scenario_path.empty() && o.seed) sc = satcg::with_seed(std::move(sc), *o.seed);
  if (o.hs) sc.hops_intersat = *o.hs;
  if (o.hg) sc.hops_ground = *o.hg;
  sc.check();
  return sc;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::uint64_t> seed_range(int count) {
  std::vector<std::uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) seeds[i] = static_cast<std::uint64_t>(i + 1);
  return seeds;
}

void print_solve_summary(const satcg::Scenario& sc, const satcg::ColGenResult& r) {
  const satcg::RmpLayout layout = satcg::make_rmp_layout(sc.topology);
  std::cerr << "constraints n_c = " << layout.num_rows << ", final variables n_v = "
            << sc.num_satellites() + r.pool.size() << "\n";
  for (const satcg::IterationRecord& t : r.trace)
    std::cerr << "iter " << t.iteration << ": n_v = " << t.columns
              << ", objective = " << t.objective << ", violations = " << t.violations_found
              << "\n";
  std::cerr << (r.converged ? "converged" : "stopped: " + r.stop_reason) << " after "
            << r.iterations << " iterations, " << r.wall_ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint multi-hop routing and computation offloading solver"};
  app.require_subcommand(1);

  CommonOpts topo_o, enum_o, solve_o, base_o, table_o, hop_o, demand_o, audit_o;
  int enum_hmax = 0, table_hmax = 5, hop_hmax = 5;
  int sweep_seeds = 20;
  std::vector<double> demand_means{5, 10, 20, 40, 60, 80, 100};
  std::string baseline_method = "dfs";
  bool solve_seed_pool = false;

  CLI::App* topo_cmd = app.add_subcommand("topology", "emit the topology document");
  add_common(topo_cmd, topo_o, false);

  CLI::App* enum_cmd = app.add_subcommand("enumerate", "count feasible routes per hop limit");
  add_common(enum_cmd, enum_o);
  enum_cmd->add_option("--h-max", enum_hmax, "emit rows for h = 1..h-max (default: scenario hops)");

  CLI::App* solve_cmd = app.add_subcommand("solve", "column generation solve");
  add_common(solve_cmd, solve_o);
  solve_cmd->add_flag("--seed-one-hop", solve_seed_pool, "start from all one-hop routes");
  std::string mps_path;
  solve_cmd->add_option("--dump-mps", mps_path, "write the final master LP in fixed MPS format");

  CLI::App* base_cmd = app.add_subcommand("baseline", "reference methods");
  add_common(base_cmd, base_o);
  base_cmd->add_option("--method", baseline_method, "dfs, local, or full")
      ->check(CLI::IsMember({"dfs", "local", "full"}));

  CLI::App* table_cmd = app.add_subcommand("table2", "route universe vs activated columns");
  add_common(table_cmd, table_o);
  table_cmd->add_option("--h-max", table_hmax, "hop limits 1..h-max");

  CLI::App* hop_cmd = app.add_subcommand("hop-sweep", "objective and layer volumes vs hop limit");
  add_common(hop_cmd, hop_o);
  hop_cmd->add_option("--h-max", hop_hmax, "sweep h = 0..h-max");
  hop_cmd->add_option("--seeds", sweep_seeds, "number of demand seeds to average");

  CLI::App* demand_cmd = app.add_subcommand("demand-sweep", "objective vs demand mean");
  add_common(demand_cmd, demand_o);
  demand_cmd->add_option("--means", demand_means, "demand means to sweep");
  demand_cmd->add_option("--seeds", sweep_seeds, "number of demand seeds to average");

  CLI::App* audit_cmd = app.add_subcommand("audit", "solve, then verify dual feasibility over all routes");
  add_common(audit_cmd, audit_o, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (topo_cmd->parsed()) {
      const satcg::Scenario sc = resolve_scenario(topo_o);
      Output out(topo_o.out_path);
      out.stream() << satcg::topology_to_json(sc.topology).dump(2) << "\n";
      return 0;
    }

    if (enum_cmd->parsed()) {
      const satcg::Scenario sc = resolve_scenario(enum_o);
      Output out(enum_o.out_path);
      std::vector<satcg::EnumerationRow> rows;
      if (enum_hmax > 0) {
        rows = satcg::run_enumeration_counts(sc.topology, enum_hmax, enum_o.ceiling);
      } else {
        const satcg::RouteSets sets = satcg::enumerate_routes(sc.topology, sc.hops_intersat,
                                                              sc.hops_ground, enum_o.ceiling);
        rows.push_back({sc.hops_intersat, sc.hops_ground, sets.intersat.size(), sets.ground.size()});
      }
      if (enum_o.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
          j.push_back({{"hs", r.hs}, {"hg", r.hg}, {"n_intersat", r.n_intersat},
                       {"n_ground", r.n_ground}, {"total", r.total()}});
        out.stream() << j.dump(2) << "\n";
      } else {
        satcg::write_enumeration_csv(out.stream(), rows);
      }
      return 0;
    }

    if (solve_cmd->parsed()) {
      const satcg::Scenario sc = resolve_scenario(solve_o);
      satcg::ColGenOptions opt;
      opt.seed_one_hop_routes = solve_seed_pool;
      opt.route_ceiling = solve_o.ceiling;
      const satcg::ColGenResult r = satcg::run_column_generation(sc, opt);
      print_solve_summary(sc, r);
      if (!mps_path.empty()) {
        std::ofstream mps(mps_path);
        if (!mps) throw std::runtime_error("cannot open " + mps_path);
        satcg::write_mps(satcg::build_rmp(sc, r.pool), mps, "SATCG-RMP");
      }
      Output out(solve_o.out_path);
      if (solve_o.format == "json")
        out.stream() << satcg::result_to_json(r).dump(2) << "\n";
      else
        satcg::write_trace_csv(out.stream(), r);
      return r.converged ? 0 : 3;
    }

    if (base_cmd->parsed()) {
      const satcg::Scenario sc = resolve_scenario(base_o);
      Output out(base_o.out_path);
      nlohmann::json j;
      if (baseline_method == "dfs") {
        j = satcg::result_to_json(satcg::solve_dfs(sc));
      } else if (baseline_method == "local") {
        const double obj = satcg::solve_local_only(sc);
        j = {{"objective", obj},
             {"volumes",
              {{"local", satcg::local_only_volume(sc)}, {"intersat", 0.0}, {"ground", 0.0},
               {"total", satcg::local_only_volume(sc)}}}};
      } else {
        const satcg::FullEnumerationSolution full = satcg::solve_full_enumeration(sc, base_o.ceiling);
        j = {{"objective", full.objective},
             {"enumerated", full.enumerated},
             {"x_local", full.x_local}};
      }
      j["method"] = baseline_method;
      if (base_o.format == "json") {
        out.stream() << j.dump(2) << "\n";
      } else {
        satcg::write_csv_preamble(out.stream(), "baseline", "method,objective");
        out.stream() << baseline_method << ',' << j.at("objective").get<double>() << "\n";
      }
      return 0;
    }

    if (table_cmd->parsed()) {
      const satcg::Scenario sc = resolve_scenario(table_o);
      satcg::ColGenOptions opt;
      opt.route_ceiling = table_o.ceiling;
      const auto rows = satcg::run_table2(sc, table_hmax, opt);
      Output out(table_o.out_path);
      if (table_o.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
          j.push_back({{"hs", r.hs}, {"hg", r.hg}, {"enumerated", r.enumerated},
                       {"activated", r.activated}, {"reduction_pct", r.reduction_pct},
                       {"objective", r.objective}});
        out.stream() << j.dump(2) << "\n";
      } else {
        satcg::write_table2_csv(out.stream(), rows);
      }
      return 0;
    }

    if (hop_cmd->parsed()) {
      const satcg::Scenario sc = resolve_scenario(hop_o);
      std::vector<int> hs;
      for (int h = 0; h <= hop_hmax; ++h) hs.push_back(h);
      satcg::ColGenOptions opt;
      opt.route_ceiling = hop_o.ceiling;
      const auto rows = satcg::run_hop_sweep(sc, hs, seed_range(sweep_seeds), opt);
      Output out(hop_o.out_path);
      if (hop_o.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
          j.push_back({{"h", r.h}, {"objective_mean", r.objective_mean},
                       {"volume_local_mean", r.volume_local_mean},
                       {"volume_intersat_mean", r.volume_intersat_mean},
                       {"volume_ground_mean", r.volume_ground_mean},
                       {"volume_total_mean", r.volume_total_mean}});
        out.stream() << j.dump(2) << "\n";
      } else {
        satcg::write_hop_sweep_csv(out.stream(), rows);
      }
      return 0;
    }

    if (demand_cmd->parsed()) {
      const satcg::Scenario sc = resolve_scenario(demand_o);
      satcg::ColGenOptions opt;
      opt.route_ceiling = demand_o.ceiling;
      const auto rows = satcg::run_demand_sweep(sc, demand_means, seed_range(sweep_seeds), opt);
      Output out(demand_o.out_path);
      if (demand_o.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
          j.push_back({{"mean", r.mean}, {"colgen_objective_mean", r.colgen_objective_mean},
                       {"dfs_objective_mean", r.dfs_objective_mean},
                       {"local_objective_mean", r.local_objective_mean}});
        out.stream() << j.dump(2) << "\n";
      } else {
        satcg::write_demand_sweep_csv(out.stream(), rows);
      }
      return 0;
    }

    if (audit_cmd->parsed()) {
      const satcg::Scenario sc = resolve_scenario(audit_o);
      satcg::ColGenOptions opt;
      opt.route_ceiling = audit_o.ceiling;
      const satcg::ColGenResult r = satcg::run_column_generation(sc, opt);
      print_solve_summary(sc, r);
      const satcg::AuditReport report = satcg::audit_optimality(sc, r, 1e-7, audit_o.ceiling);
      Output out(audit_o.out_path);
      nlohmann::json j = {{"performed", report.performed},
                          {"routes_checked", report.routes_checked},
                          {"violations", report.violations.size()},
                          {"objective", r.objective}};
      if (!report.performed) j["notice"] = report.notice;
      out.stream() << j.dump(2) << "\n";
      return report.performed && report.violations.empty() ? 0 : 4;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
