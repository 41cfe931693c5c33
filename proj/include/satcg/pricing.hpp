#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "satcg/master.hpp"
#include "satcg/route.hpp"
#include "satcg/topology.hpp"

namespace satcg {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Level-m entries hold the minimum weight over walks of at most m ISL edges
// from the source. Predecessors are recorded only on strict improvement, so
// reconstruction always yields a simple path when weights are nonnegative.
struct HopDistanceTable {
  NodeId source = 0;
  int levels = 0;                         // H
  std::vector<std::vector<double>> dist;  // [m][node], m = 0..H
  std::vector<std::vector<NodeId>> pred;  // [m][node]; -1 = carried from m-1

  double at(int m, NodeId node) const { return dist[m][node]; }

  // Min-weight path of <= m edges ending at `target`.
  std::vector<NodeId> reconstruct(NodeId target, int m) const {
    if (!(dist[m][target] < kUnreachable))
      throw std::logic_error("hop table: target unreachable within hop budget");
    std::vector<NodeId> path{target};
    NodeId node = target;
    for (int level = m; level > 0; --level) {
      const NodeId p = pred[level][node];
      if (p < 0) continue;  // value carried from the previous level
      path.push_back(p);
      node = p;
    }
    if (node != source) throw std::logic_error("hop table: reconstruction did not reach source");
    std::reverse(path.begin(), path.end());
    std::vector<char> seen;
    for (NodeId v : path) {
      if (static_cast<std::size_t>(v) >= seen.size()) seen.resize(v + 1, 0);
      if (seen[v]++) throw std::logic_error("hop table: reconstructed walk revisits a vertex");
    }
    return path;
  }
};

// Directional ISL weights; duals supply them in pricing, tests may supply
// arbitrary nonnegative vectors indexed like Topology::edges.
struct IslWeights {
  std::vector<double> fwd;  // traversal u->v as stored
  std::vector<double> bwd;  // traversal v->u

  static IslWeights from_duals(const DualPrices& duals) {
    return {duals.alpha_fwd, duals.alpha_bwd};
  }
  static IslWeights symmetric(std::vector<double> w) { return {w, w}; }

  double along(const Topology& topo, int edge, NodeId from) const {
    return topo.edges[edge].u == from ? fwd[edge] : bwd[edge];
  }
};

inline HopDistanceTable truncated_bellman_ford(const Topology& topo, const IslWeights& weights,
                                               NodeId source, int levels) {
  if (!topo.is_satellite(source))
    throw std::invalid_argument("truncated_bellman_ford: source must be a satellite");
  if (levels < 1) throw std::invalid_argument("truncated_bellman_ford: need at least one level");
  for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e) {
    if (topo.edges[e].kind != EdgeKind::Isl) continue;
    if (weights.fwd[e] < 0.0 || weights.bwd[e] < 0.0)
      throw std::invalid_argument("truncated_bellman_ford: negative edge weight");
  }

  const int nn = topo.num_nodes();
  HopDistanceTable table;
  table.source = source;
  table.levels = levels;
  table.dist.assign(levels + 1, std::vector<double>(nn, kUnreachable));
  table.pred.assign(levels + 1, std::vector<NodeId>(nn, -1));
  table.dist[0][source] = 0.0;

  for (int m = 1; m <= levels; ++m) {
    table.dist[m] = table.dist[m - 1];
    for (NodeId j = 1; j <= topo.num_satellites; ++j) {
      // neighbors ascending: the lowest-index predecessor wins ties
      for (const Neighbor& nb : topo.neighbors(j)) {
        if (topo.edges[nb.edge].kind != EdgeKind::Isl) continue;
        const double base = table.dist[m - 1][nb.node];
        if (!(base < kUnreachable)) continue;
        const double w = base + weights.along(topo, nb.edge, nb.node);
        if (w < table.dist[m][j]) {
          table.dist[m][j] = w;
          table.pred[m][j] = nb.node;
        }
      }
    }
  }
  return table;
}

// Inter-satellite routes whose dual constraint is violated: for each ordered
// pair (s, t) the min-weight hop-bounded path enters iff its weight is below
// b - gamma_s - zeta_t by more than `tol`; at most one route per pair.
inline std::vector<Route> find_violating_intersat(const Topology& topo, const DualPrices& duals,
                                                  double weight_intersat, int hops_intersat,
                                                  double tol = 1e-7) {
  std::vector<Route> found;
  if (hops_intersat < 1) return found;
  const IslWeights weights = IslWeights::from_duals(duals);
  for (NodeId s = 1; s <= topo.num_satellites; ++s) {
    const double bound_base = weight_intersat - duals.gamma_of(s);
    if (bound_base <= tol) continue;  // no target can violate
    const HopDistanceTable table = truncated_bellman_ford(topo, weights, s, hops_intersat);
    for (NodeId t = 1; t <= topo.num_satellites; ++t) {
      if (t == s) continue;
      const double u = table.at(hops_intersat, t);
      if (u < bound_base - duals.zeta_of(t) - tol)
        found.push_back({RouteKind::InterSatellite, table.reconstruct(t, hops_intersat)});
    }
  }
  return found;
}

// Ground routes violating their dual constraint: per source, the best
// gateway under path weight + beta enters iff below c - gamma_s - tol.
// The zero-length path covers a gateway offloading through its own SGL.
inline std::vector<Route> find_violating_ground(const Topology& topo, const DualPrices& duals,
                                                double weight_ground, int hops_ground,
                                                double tol = 1e-7) {
  std::vector<Route> found;
  if (hops_ground < 1) return found;
  const IslWeights weights = IslWeights::from_duals(duals);

  for (NodeId s = 1; s <= topo.num_satellites; ++s) {
    const double bound = weight_ground - duals.gamma_of(s);
    if (bound <= tol) continue;

    HopDistanceTable table;
    const int levels = hops_ground - 1;
    if (levels >= 1) table = truncated_bellman_ford(topo, weights, s, levels);

    NodeId best_gateway = -1;
    double best = kUnreachable;
    for (NodeId g : topo.gateways) {
      const double reach = levels >= 1 ? table.at(levels, g) : (g == s ? 0.0 : kUnreachable);
      if (!(reach < kUnreachable)) continue;
      const auto e = topo.edge_between(g, kGroundNode);
      const double value = reach + duals.beta[*e];
      if (value < best) {
        best = value;
        best_gateway = g;
      }
    }
    if (best_gateway >= 0 && best < bound - tol) {
      std::vector<NodeId> path =
          levels >= 1 ? table.reconstruct(best_gateway, levels) : std::vector<NodeId>{s};
      path.push_back(kGroundNode);
      found.push_back({RouteKind::SatelliteToGround, std::move(path)});
    }
  }
  return found;
}

}  // namespace satcg
