#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "satcg/topology.hpp"

namespace satcg {

enum class RouteKind { InterSatellite, SatelliteToGround };

// A simple directed vertex path. Inter-satellite routes visit satellites
// only; ground routes end with an SGL hop onto node 0 (that hop counts).
struct Route {
  RouteKind kind = RouteKind::InterSatellite;
  std::vector<NodeId> vertices;

  int hops() const { return static_cast<int>(vertices.size()) - 1; }
  NodeId source() const { return vertices.front(); }
  NodeId terminal() const { return vertices.back(); }
  // Last satellite of a ground route (the gateway carrying the SGL).
  NodeId gateway() const { return vertices[vertices.size() - 2]; }

  bool operator==(const Route& o) const = default;
};

struct RouteHash {
  std::size_t operator()(const Route& r) const {
    std::size_t h = r.kind == RouteKind::InterSatellite ? 0x9E3779B97F4A7C15ull : 0xC2B2AE3D27D4EB4Full;
    for (NodeId v : r.vertices) h = h * 1099511628211ull + static_cast<std::size_t>(v) + 1;
    return h;
  }
};

// Empty result means the route is valid for the topology and hop limits.
inline std::optional<std::string> route_violation(const Topology& topo, const Route& r,
                                                  int hops_intersat, int hops_ground) {
  if (r.vertices.size() < 2) return "route needs at least two vertices";
  for (std::size_t i = 0; i < r.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < r.vertices.size(); ++j)
      if (r.vertices[i] == r.vertices[j]) return "route vertices must be pairwise distinct";

  for (std::size_t i = 0; i + 1 < r.vertices.size(); ++i) {
    const auto e = topo.edge_between(r.vertices[i], r.vertices[i + 1]);
    if (!e) return "route uses a nonexistent edge";
    const bool last = (i + 2 == r.vertices.size());
    const EdgeKind want =
        (r.kind == RouteKind::SatelliteToGround && last) ? EdgeKind::Sgl : EdgeKind::Isl;
    if (topo.edges[*e].kind != want)
      return want == EdgeKind::Sgl ? "ground route must end with an SGL edge"
                                   : "route interior must use ISL edges";
  }

  if (r.kind == RouteKind::InterSatellite) {
    for (NodeId v : r.vertices)
      if (!topo.is_satellite(v)) return "inter-satellite route must visit satellites only";
    if (r.hops() < 1) return "inter-satellite route needs at least one hop";
    if (r.hops() > hops_intersat) return "inter-satellite route exceeds hop limit";
  } else {
    if (r.terminal() != kGroundNode) return "ground route must terminate at node 0";
    for (std::size_t i = 0; i + 1 < r.vertices.size(); ++i)
      if (!topo.is_satellite(r.vertices[i])) return "ground route interior must be satellites";
    if (r.hops() > hops_ground) return "ground route exceeds hop limit";
  }
  return std::nullopt;
}

struct RouteSets {
  std::vector<Route> intersat;
  std::vector<Route> ground;

  std::size_t total() const { return intersat.size() + ground.size(); }
};

class EnumerationCeilingError : public std::runtime_error {
 public:
  explicit EnumerationCeilingError(std::size_t ceiling)
      : std::runtime_error("route enumeration exceeds ceiling of " + std::to_string(ceiling)) {}
};

inline constexpr std::size_t kDefaultRouteCeiling = 2'000'000;

// All simple directed paths within the hop limits, in deterministic order:
// sources ascending, then depth-first with neighbors ascending.
inline RouteSets enumerate_routes(const Topology& topo, int hops_intersat, int hops_ground,
                                  std::size_t ceiling = kDefaultRouteCeiling) {
  RouteSets out;
  const auto guard = [&] {
    if (out.total() > ceiling) throw EnumerationCeilingError(ceiling);
  };

  std::vector<NodeId> path;
  std::vector<char> on_path(topo.num_nodes(), 0);

  const std::function<void(NodeId, int, int, bool)> dfs = [&](NodeId v, int depth, int limit,
                                                              bool ground_mode) {
    if (ground_mode) {
      // depth ISL edges so far; one more SGL hop must fit
      if (topo.is_gateway(v) && depth + 1 <= hops_ground) {
        Route r{RouteKind::SatelliteToGround, path};
        r.vertices.push_back(kGroundNode);
        out.ground.push_back(std::move(r));
        guard();
      }
    } else if (depth >= 1) {
      out.intersat.push_back({RouteKind::InterSatellite, path});
      guard();
    }
    if (depth >= limit) return;
    for (const Neighbor& nb : topo.neighbors(v)) {
      if (topo.edges[nb.edge].kind != EdgeKind::Isl) continue;
      if (on_path[nb.node]) continue;
      on_path[nb.node] = 1;
      path.push_back(nb.node);
      dfs(nb.node, depth + 1, limit, ground_mode);
      path.pop_back();
      on_path[nb.node] = 0;
    }
  };

  for (NodeId s = 1; s <= topo.num_satellites; ++s) {
    if (hops_intersat < 1) break;
    path.assign(1, s);
    on_path.assign(topo.num_nodes(), 0);
    on_path[s] = 1;
    dfs(s, 0, hops_intersat, false);
  }
  for (NodeId s = 1; s <= topo.num_satellites; ++s) {
    if (hops_ground < 1) break;
    path.assign(1, s);
    on_path.assign(topo.num_nodes(), 0);
    on_path[s] = 1;
    dfs(s, 0, hops_ground - 1, true);
  }
  return out;
}

struct RouteRef {
  RouteKind kind;
  int index;  // position within RouteSets::intersat or ::ground

  bool operator==(const RouteRef&) const = default;
};

// Incidence index over a route collection: per-edge traversals plus
// per-satellite source/terminal buckets.
struct RouteIndex {
  std::vector<std::vector<RouteRef>> by_edge;        // edge index -> routes through it
  std::vector<std::vector<RouteRef>> intersat_from;  // satellite -> routes sourced there
  std::vector<std::vector<RouteRef>> intersat_to;    // satellite -> routes terminating there
  std::vector<std::vector<RouteRef>> ground_from;    // satellite -> ground routes sourced there
};

inline RouteIndex build_route_index(const Topology& topo, const RouteSets& sets) {
  RouteIndex idx;
  idx.by_edge.assign(topo.edges.size(), {});
  idx.intersat_from.assign(topo.num_nodes(), {});
  idx.intersat_to.assign(topo.num_nodes(), {});
  idx.ground_from.assign(topo.num_nodes(), {});

  const auto add_edges = [&](const Route& r, RouteRef ref) {
    for (std::size_t i = 0; i + 1 < r.vertices.size(); ++i) {
      const auto e = topo.edge_between(r.vertices[i], r.vertices[i + 1]);
      if (!e) throw std::invalid_argument("build_route_index: route uses a nonexistent edge");
      idx.by_edge[*e].push_back(ref);
    }
  };

  for (int i = 0; i < static_cast<int>(sets.intersat.size()); ++i) {
    const Route& r = sets.intersat[i];
    const RouteRef ref{RouteKind::InterSatellite, i};
    add_edges(r, ref);
    idx.intersat_from[r.source()].push_back(ref);
    idx.intersat_to[r.terminal()].push_back(ref);
  }
  for (int i = 0; i < static_cast<int>(sets.ground.size()); ++i) {
    const Route& r = sets.ground[i];
    const RouteRef ref{RouteKind::SatelliteToGround, i};
    add_edges(r, ref);
    idx.ground_from[r.source()].push_back(ref);
  }
  return idx;
}

}  // namespace satcg
