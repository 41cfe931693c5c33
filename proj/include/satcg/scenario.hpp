#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "satcg/prng.hpp"
#include "satcg/topology.hpp"

namespace satcg {

// Lognormal demand generator parameters. With log-space sigma the underlying
// normal is N(ln(mean) - sigma^2/2, sigma^2) so the distribution mean equals
// `mean`; with linear-space sigma the pair (mean, sigma) is matched by moment
// fitting. Draw i is a pure function of (seed, i).
struct DemandModel {
  double mean = 20.0;  // in `unit`
  double sigma = 1.3;
  std::uint64_t seed = 1;
  enum class Unit { Gbit, GB } unit = Unit::Gbit;
  bool sigma_in_log_space = true;
};

// Gbit per slot at the boundary between cycle rate and data rate.
inline double derive_compute_capacity(double cycles_per_sec, double processing_density,
                                      double slot_duration = 1.0) {
  if (cycles_per_sec <= 0.0 || processing_density <= 0.0 || slot_duration <= 0.0)
    throw std::invalid_argument("derive_compute_capacity: inputs must be positive");
  return cycles_per_sec / processing_density * slot_duration;
}

inline std::vector<double> generate_demands(const DemandModel& model, int n) {
  if (n <= 0) throw std::invalid_argument("generate_demands: n must be positive");
  if (model.mean <= 0.0 || model.sigma < 0.0)
    throw std::invalid_argument("generate_demands: need mean > 0 and sigma >= 0");
  const double unit_scale = model.unit == DemandModel::Unit::GB ? 8.0 : 1.0;
  const double mean = model.mean * unit_scale;
  double sigma = model.sigma;
  if (!model.sigma_in_log_space) {
    const double s = model.sigma * unit_scale;
    sigma = std::sqrt(std::log1p((s * s) / (mean * mean)));
  }
  std::vector<double> demands(n);
  if (sigma == 0.0) {
    for (double& d : demands) d = mean;
    return demands;
  }
  const double mu = std::log(mean) - 0.5 * sigma * sigma;
  for (int i = 0; i < n; ++i)
    demands[i] = std::exp(mu + sigma * normal_draw(model.seed, static_cast<std::uint64_t>(i)));
  return demands;
}

// A complete problem instance. Quantities are Gbit per slot after loading;
// immutable once built.
struct Scenario {
  Topology topology;
  std::vector<double> demands;           // per satellite, demands[i-1] for satellite i
  std::vector<double> compute_capacity;  // per satellite
  double weight_local = 0.6;
  double weight_intersat = 0.3;
  double weight_ground = 0.1;
  int hops_intersat = 1;
  int hops_ground = 1;
  double slot_duration = 1.0;
  std::optional<DemandModel> demand_model;  // present when demands were generated

  int num_satellites() const { return topology.num_satellites; }

  double demand(NodeId sat) const { return demands[sat - 1]; }
  double capacity(NodeId sat) const { return compute_capacity[sat - 1]; }

  void check() const {
    if (static_cast<int>(demands.size()) != num_satellites() ||
        static_cast<int>(compute_capacity.size()) != num_satellites())
      throw std::invalid_argument("scenario: demand/capacity size mismatch");
    for (double d : demands)
      if (!(d >= 0.0)) throw std::invalid_argument("scenario: demands must be nonnegative");
    for (double c : compute_capacity)
      if (!(c > 0.0)) throw std::invalid_argument("scenario: compute capacities must be positive");
    if (weight_local < 0.0 || weight_intersat < 0.0 || weight_ground < 0.0)
      throw std::invalid_argument("scenario: weights must be nonnegative");
    if (hops_intersat < 0 || hops_ground < 0)
      throw std::invalid_argument("scenario: hop limits must be nonnegative");
    if (slot_duration <= 0.0) throw std::invalid_argument("scenario: slot duration must be positive");
  }
};

// Regenerate demands from the stored model with a new seed.
inline Scenario with_seed(Scenario scenario, std::uint64_t seed) {
  if (!scenario.demand_model)
    throw std::invalid_argument("with_seed: scenario has explicit demands, no generator");
  scenario.demand_model->seed = seed;
  scenario.demands = generate_demands(*scenario.demand_model, scenario.num_satellites());
  return scenario;
}

inline Scenario with_demand_mean(Scenario scenario, double mean) {
  if (!scenario.demand_model)
    throw std::invalid_argument("with_demand_mean: scenario has explicit demands, no generator");
  scenario.demand_model->mean = mean;
  scenario.demands = generate_demands(*scenario.demand_model, scenario.num_satellites());
  return scenario;
}

// The benchmark instance: 6x5 wrapped grid, one gateway per plane,
// ISL 5 / SGL 1 / compute 10 Gbit per slot, weights (0.6, 0.3, 0.1),
// lognormal(mean 20, sigma 1.3) demands.
inline Scenario make_reference_scenario(std::uint64_t seed = 1, int hops_intersat = 1,
                                        int hops_ground = 1) {
  Scenario sc;
  sc.topology = build_walker_star(6, 5, 0, /*seam_wrap=*/true, 5.0, 1.0);
  sc.compute_capacity.assign(30, derive_compute_capacity(1e9, 1e8, 1.0));
  sc.demand_model = DemandModel{20.0, 1.3, seed, DemandModel::Unit::Gbit, true};
  sc.demands = generate_demands(*sc.demand_model, 30);
  sc.hops_intersat = hops_intersat;
  sc.hops_ground = hops_ground;
  sc.check();
  return sc;
}

// ---------------------------------------------------------------------------
// JSON documents

inline nlohmann::json topology_to_json(const Topology& topo) {
  nlohmann::json j;
  j["num_satellites"] = topo.num_satellites;
  if (topo.planes > 0) {
    j["planes"] = topo.planes;
    j["sats_per_plane"] = topo.sats_per_plane;
  }
  j["seam_wrap"] = topo.seam_wrap;
  j["duplex"] = topo.duplex == DuplexMode::Shared ? "shared" : "full-duplex";
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId n = 0; n < topo.num_nodes(); ++n) nodes.push_back(n);
  j["nodes"] = nodes;
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : topo.edges)
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"kind", e.kind == EdgeKind::Isl ? "isl" : "sgl"},
                     {"capacity", e.capacity}});
  j["edges"] = edges;
  j["gateways"] = topo.gateways;
  return j;
}

inline Topology topology_from_json(const nlohmann::json& j) {
  if (!j.contains("num_satellites") || !j.contains("edges"))
    throw std::invalid_argument("topology document: num_satellites and edges are required");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    const std::string kind = e.at("kind").get<std::string>();
    if (kind != "isl" && kind != "sgl")
      throw std::invalid_argument("topology document: edge kind must be isl or sgl");
    edges.push_back({e.at("u").get<NodeId>(), e.at("v").get<NodeId>(),
                     kind == "isl" ? EdgeKind::Isl : EdgeKind::Sgl,
                     e.at("capacity").get<double>()});
  }
  const std::string duplex = j.value("duplex", "shared");
  if (duplex != "shared" && duplex != "full-duplex")
    throw std::invalid_argument("topology document: duplex must be shared or full-duplex");
  Topology topo = make_topology(j.at("num_satellites").get<int>(), std::move(edges),
                                duplex == "shared" ? DuplexMode::Shared : DuplexMode::FullDuplex);
  topo.seam_wrap = j.value("seam_wrap", false);
  topo.planes = j.value("planes", 0);
  topo.sats_per_plane = j.value("sats_per_plane", 0);
  return topo;
}

namespace detail {

inline DemandModel demand_model_from_json(const nlohmann::json& d) {
  DemandModel model;
  model.mean = d.at("mean").get<double>();
  model.sigma = d.at("sigma").get<double>();
  model.seed = d.value("seed", std::uint64_t{1});
  const std::string unit = d.value("unit", "gbit");
  if (unit == "gbit")
    model.unit = DemandModel::Unit::Gbit;
  else if (unit == "gb")
    model.unit = DemandModel::Unit::GB;
  else
    throw std::invalid_argument("scenario document: demand unit must be gbit or gb");
  const std::string space = d.value("sigma_space", "log");
  if (space != "log" && space != "linear")
    throw std::invalid_argument("scenario document: sigma_space must be log or linear");
  model.sigma_in_log_space = space == "log";
  return model;
}

}  // namespace detail

// Scenario document:
//   topology:   walker parameters | {"file": path} | inline topology document
//   demands:    explicit array (unit via demand_unit, default gbit)
//               | {mean, sigma, seed, unit, sigma_space}
//   capacities: {isl, sgl, compute | (cycles_per_sec, processing_density)}
//   weights:    [a, b, c]
//   hops:       [intersat, ground]
//   slot_duration: seconds, default 1
inline Scenario load_scenario(const nlohmann::json& j) {
  for (const char* key : {"topology", "demands", "capacities", "weights", "hops"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("scenario document: missing required key ") + key);

  Scenario sc;
  sc.slot_duration = j.value("slot_duration", 1.0);

  const auto& caps = j.at("capacities");
  if (!caps.contains("isl") || !caps.contains("sgl"))
    throw std::invalid_argument("scenario document: capacities.isl and capacities.sgl are required");
  const double isl_rate = caps.at("isl").get<double>() * sc.slot_duration;
  const double sgl_rate = caps.at("sgl").get<double>() * sc.slot_duration;

  const auto& t = j.at("topology");
  if (t.contains("file")) {
    std::ifstream in(t.at("file").get<std::string>());
    if (!in) throw std::invalid_argument("scenario document: unknown topology reference " +
                                         t.at("file").get<std::string>());
    nlohmann::json tj;
    in >> tj;
    sc.topology = topology_from_json(tj);
  } else if (t.contains("planes")) {
    const std::string duplex = t.value("duplex", "shared");
    if (duplex != "shared" && duplex != "full-duplex")
      throw std::invalid_argument("scenario document: duplex must be shared or full-duplex");
    sc.topology = build_walker_star(
        t.at("planes").get<int>(), t.at("sats_per_plane").get<int>(), t.value("gateway_phase", 0),
        t.value("seam_wrap", true), isl_rate, sgl_rate,
        duplex == "shared" ? DuplexMode::Shared : DuplexMode::FullDuplex);
  } else {
    sc.topology = topology_from_json(t);
  }

  const int n = sc.topology.num_satellites;

  if (caps.contains("compute_per_satellite")) {
    for (const auto& v : caps.at("compute_per_satellite"))
      sc.compute_capacity.push_back(v.get<double>() * sc.slot_duration);
    if (static_cast<int>(sc.compute_capacity.size()) != n)
      throw std::invalid_argument("scenario document: compute_per_satellite length mismatch");
  } else if (caps.contains("compute")) {
    sc.compute_capacity.assign(n, caps.at("compute").get<double>() * sc.slot_duration);
  } else if (caps.contains("cycles_per_sec") && caps.contains("processing_density")) {
    sc.compute_capacity.assign(
        n, derive_compute_capacity(caps.at("cycles_per_sec").get<double>(),
                                   caps.at("processing_density").get<double>(), sc.slot_duration));
  } else {
    throw std::invalid_argument(
        "scenario document: capacities need compute or cycles_per_sec + processing_density");
  }

  const auto& d = j.at("demands");
  if (d.is_array()) {
    const std::string unit = j.value("demand_unit", "gbit");
    if (unit != "gbit" && unit != "gb")
      throw std::invalid_argument("scenario document: demand_unit must be gbit or gb");
    const double scale = unit == "gb" ? 8.0 : 1.0;
    for (const auto& v : d) sc.demands.push_back(v.get<double>() * scale);
    if (static_cast<int>(sc.demands.size()) != n)
      throw std::invalid_argument("scenario document: demand list length must match satellite count");
    if (j.contains("demand_model"))
      sc.demand_model = detail::demand_model_from_json(j.at("demand_model"));
  } else {
    sc.demand_model = detail::demand_model_from_json(d);
    sc.demands = generate_demands(*sc.demand_model, n);
  }

  const auto& w = j.at("weights");
  if (!w.is_array() || w.size() != 3)
    throw std::invalid_argument("scenario document: weights must be [a, b, c]");
  sc.weight_local = w[0].get<double>();
  sc.weight_intersat = w[1].get<double>();
  sc.weight_ground = w[2].get<double>();

  const auto& h = j.at("hops");
  if (!h.is_array() || h.size() != 2)
    throw std::invalid_argument("scenario document: hops must be [intersat, ground]");
  sc.hops_intersat = h[0].get<int>();
  sc.hops_ground = h[1].get<int>();

  sc.check();
  return sc;
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file " + path);
  nlohmann::json j;
  in >> j;
  return load_scenario(j);
}

// Emits the resolved form: inline topology, explicit demand list (plus the
// generator parameters when demands were generated).
inline nlohmann::json scenario_to_json(const Scenario& sc) {
  nlohmann::json j;
  j["topology"] = topology_to_json(sc.topology);
  j["demands"] = sc.demands;
  j["demand_unit"] = "gbit";
  if (sc.demand_model) {
    j["demand_model"] = {{"mean", sc.demand_model->mean},
                         {"sigma", sc.demand_model->sigma},
                         {"seed", sc.demand_model->seed},
                         {"unit", sc.demand_model->unit == DemandModel::Unit::GB ? "gb" : "gbit"},
                         {"sigma_space", sc.demand_model->sigma_in_log_space ? "log" : "linear"}};
  }
  double isl = 0.0, sgl = 0.0;
  for (const Edge& e : sc.topology.edges)
    (e.kind == EdgeKind::Isl ? isl : sgl) = e.capacity;
  j["capacities"] = {{"isl", isl / sc.slot_duration}, {"sgl", sgl / sc.slot_duration}};
  const bool uniform =
      std::all_of(sc.compute_capacity.begin(), sc.compute_capacity.end(),
                  [&](double c) { return c == sc.compute_capacity.front(); });
  if (uniform && !sc.compute_capacity.empty()) {
    j["capacities"]["compute"] = sc.compute_capacity.front() / sc.slot_duration;
  } else {
    nlohmann::json per = nlohmann::json::array();
    for (double c : sc.compute_capacity) per.push_back(c / sc.slot_duration);
    j["capacities"]["compute_per_satellite"] = per;
  }
  j["weights"] = {sc.weight_local, sc.weight_intersat, sc.weight_ground};
  j["hops"] = {sc.hops_intersat, sc.hops_ground};
  j["slot_duration"] = sc.slot_duration;
  return j;
}

}  // namespace satcg
