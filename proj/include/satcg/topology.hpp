#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace satcg {

// Node 0 is the ground station; satellites are 1..num_satellites.
using NodeId = std::int32_t;
inline constexpr NodeId kGroundNode = 0;

enum class EdgeKind { Isl, Sgl };

// How an ISL's capacity is charged: one budget shared by both traversal
// directions, or an independent budget per direction.
enum class DuplexMode { Shared, FullDuplex };

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  EdgeKind kind = EdgeKind::Isl;
  double capacity = 0.0;  // Gbit per slot

  NodeId other(NodeId n) const { return n == u ? v : u; }
};

struct Neighbor {
  NodeId node;
  int edge;  // index into Topology::edges
};

// Immutable after construction; safe to share across threads.
struct Topology {
  int planes = 0;          // 0 for hand-built graphs
  int sats_per_plane = 0;  // 0 for hand-built graphs
  int num_satellites = 0;
  bool seam_wrap = false;
  DuplexMode duplex = DuplexMode::Shared;
  std::vector<Edge> edges;
  std::vector<NodeId> gateways;  // satellites with an SGL, ascending
  // adjacency[n]: neighbors of node n sorted by node index
  std::vector<std::vector<Neighbor>> adjacency;

  int num_nodes() const { return num_satellites + 1; }
  bool is_satellite(NodeId n) const { return n >= 1 && n <= num_satellites; }
  bool is_gateway(NodeId n) const {
    return std::binary_search(gateways.begin(), gateways.end(), n);
  }

  const std::vector<Neighbor>& neighbors(NodeId n) const {
    if (n < 0 || n >= num_nodes())
      throw std::out_of_range("topology: unknown node " + std::to_string(n));
    return adjacency[n];
  }

  // Edge index between i and j regardless of direction, or nullopt.
  std::optional<int> edge_between(NodeId i, NodeId j) const {
    if (i < 0 || i >= num_nodes() || j < 0 || j >= num_nodes()) return std::nullopt;
    for (const Neighbor& nb : adjacency[i])
      if (nb.node == j) return nb.edge;
    return std::nullopt;
  }

  int num_isl_edges() const {
    int n = 0;
    for (const Edge& e : edges) n += (e.kind == EdgeKind::Isl) ? 1 : 0;
    return n;
  }
  int num_sgl_edges() const { return static_cast<int>(edges.size()) - num_isl_edges(); }
};

namespace detail {

inline void finish_topology(Topology& topo) {
  topo.adjacency.assign(topo.num_nodes(), {});
  std::vector<NodeId> gw;
  for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e) {
    const Edge& ed = topo.edges[e];
    if (ed.u < 0 || ed.u >= topo.num_nodes() || ed.v < 0 || ed.v >= topo.num_nodes())
      throw std::invalid_argument("topology: edge endpoint out of range");
    if (ed.u == ed.v) throw std::invalid_argument("topology: self-loop edge");
    topo.adjacency[ed.u].push_back({ed.v, e});
    topo.adjacency[ed.v].push_back({ed.u, e});
    if (ed.kind == EdgeKind::Sgl) {
      const NodeId sat = ed.u == kGroundNode ? ed.v : ed.u;
      gw.push_back(sat);
    }
  }
  for (auto& lst : topo.adjacency)
    std::sort(lst.begin(), lst.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
  std::sort(gw.begin(), gw.end());
  gw.erase(std::unique(gw.begin(), gw.end()), gw.end());
  topo.gateways = std::move(gw);
}

}  // namespace detail

// Build a topology from an explicit edge list (used for hand-crafted
// instances). Gateways are inferred from SGL edges.
inline Topology make_topology(int num_satellites, std::vector<Edge> edges,
                              DuplexMode duplex = DuplexMode::Shared) {
  if (num_satellites < 1) throw std::invalid_argument("topology: need at least one satellite");
  Topology topo;
  topo.num_satellites = num_satellites;
  topo.duplex = duplex;
  topo.edges = std::move(edges);
  detail::finish_topology(topo);
  return topo;
}

// Walker-Star style grid: `planes` orbital planes of `sats_per_plane`
// satellites. Satellite (p, k) has index p*sats_per_plane + k + 1 and links
// to (p, k±1 mod K) in-plane and (p±1, k) across planes; the cross-plane
// ring wraps only when seam_wrap is set (4-regular torus). One gateway per
// plane at in-plane position `gateway_phase`, each with an SGL to node 0.
inline Topology build_walker_star(int planes, int sats_per_plane, int gateway_phase,
                                  bool seam_wrap, double isl_capacity, double sgl_capacity,
                                  DuplexMode duplex = DuplexMode::Shared) {
  if (planes < 3 || sats_per_plane < 3)
    throw std::invalid_argument("build_walker_star: need at least 3 planes and 3 satellites per plane");
  if (gateway_phase < 0 || gateway_phase >= sats_per_plane)
    throw std::invalid_argument("build_walker_star: gateway_phase out of range");
  if (isl_capacity <= 0.0 || sgl_capacity <= 0.0)
    throw std::invalid_argument("build_walker_star: capacities must be positive");

  Topology topo;
  topo.planes = planes;
  topo.sats_per_plane = sats_per_plane;
  topo.num_satellites = planes * sats_per_plane;
  topo.seam_wrap = seam_wrap;
  topo.duplex = duplex;

  const auto sat = [&](int p, int k) -> NodeId {
    return static_cast<NodeId>(p * sats_per_plane + k + 1);
  };

  for (int p = 0; p < planes; ++p) {
    for (int k = 0; k < sats_per_plane; ++k) {
      // in-plane ring
      topo.edges.push_back({sat(p, k), sat(p, (k + 1) % sats_per_plane), EdgeKind::Isl, isl_capacity});
      // cross-plane ring, wrapped across the seam only if requested
      if (p + 1 < planes)
        topo.edges.push_back({sat(p, k), sat(p + 1, k), EdgeKind::Isl, isl_capacity});
      else if (seam_wrap)
        topo.edges.push_back({sat(p, k), sat(0, k), EdgeKind::Isl, isl_capacity});
    }
  }
  for (int p = 0; p < planes; ++p)
    topo.edges.push_back({sat(p, gateway_phase), kGroundNode, EdgeKind::Sgl, sgl_capacity});

  detail::finish_topology(topo);
  return topo;
}

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_topology(const Topology& topo) {
  ValidationReport report;
  const auto flag = [&](const std::string& msg) { report.violations.push_back(msg); };

  int sgl_count = 0;
  for (const Edge& e : topo.edges) {
    if (e.capacity <= 0.0) flag("edge capacity must be positive");
    if (e.kind == EdgeKind::Sgl) {
      ++sgl_count;
      const bool one_ground = (e.u == kGroundNode) != (e.v == kGroundNode);
      if (!one_ground) flag("SGL endpoint must be ground (exactly one endpoint = node 0)");
    } else {
      if (e.u == kGroundNode || e.v == kGroundNode)
        flag("ISL endpoints must both be satellites");
    }
  }

  for (NodeId g : topo.gateways)
    if (!topo.is_satellite(g)) flag("gateway set must contain satellites only");
  if (static_cast<int>(topo.gateways.size()) != sgl_count)
    flag("gateway count must equal SGL edge count");

  if (topo.seam_wrap) {
    for (NodeId s = 1; s <= topo.num_satellites; ++s) {
      int isl_deg = 0;
      for (const Neighbor& nb : topo.adjacency[s])
        isl_deg += (topo.edges[nb.edge].kind == EdgeKind::Isl) ? 1 : 0;
      if (isl_deg != 4) {
        flag("wrapped grid: every satellite must have exactly 4 ISL neighbors");
        break;
      }
    }
  }

  // ISL graph connected over the satellites
  if (topo.num_satellites > 1) {
    std::vector<char> seen(topo.num_nodes(), 0);
    std::queue<NodeId> q;
    q.push(1);
    seen[1] = 1;
    int reached = 1;
    while (!q.empty()) {
      const NodeId n = q.front();
      q.pop();
      for (const Neighbor& nb : topo.adjacency[n]) {
        if (topo.edges[nb.edge].kind != EdgeKind::Isl) continue;
        if (!seen[nb.node]) {
          seen[nb.node] = 1;
          ++reached;
          q.push(nb.node);
        }
      }
    }
    if (reached != topo.num_satellites) flag("ISL graph connected: satellite subgraph is disconnected");
  }

  return report;
}

}  // namespace satcg
