#include <doctest.h>

#include <stdexcept>

#include "satcg/topology.hpp"

using namespace satcg;

namespace {

int isl_degree(const Topology& t, NodeId s) {
  int d = 0;
  for (const Neighbor& nb : t.neighbors(s)) d += t.edges[nb.edge].kind == EdgeKind::Isl ? 1 : 0;
  return d;
}

}  // namespace

TEST_CASE("reference grid has 30 satellites, 60 ISLs, 6 SGLs") {
  const Topology t = build_walker_star(6, 5, 0, true, 5.0, 1.0);
  CHECK(t.num_satellites == 30);
  CHECK(t.num_isl_edges() == 60);
  CHECK(t.num_sgl_edges() == 6);
  CHECK(t.gateways == std::vector<NodeId>{1, 6, 11, 16, 21, 26});
}

TEST_CASE("wrapped grid is 4-regular in ISLs") {
  const Topology t = build_walker_star(3, 3, 0, true, 5.0, 1.0);
  for (NodeId s = 1; s <= t.num_satellites; ++s) CHECK(isl_degree(t, s) == 4);
}

TEST_CASE("ISL edge count is 2*P*K when wrapped") {
  for (auto [p, k] : {std::pair{3, 3}, {4, 5}, {6, 5}, {5, 7}}) {
    const Topology t = build_walker_star(p, k, 0, true, 1.0, 1.0);
    CHECK(t.num_isl_edges() == 2 * p * k);
  }
}

TEST_CASE("builder is deterministic") {
  const Topology a = build_walker_star(6, 5, 2, true, 5.0, 1.0);
  const Topology b = build_walker_star(6, 5, 2, true, 5.0, 1.0);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].u == b.edges[i].u);
    CHECK(a.edges[i].v == b.edges[i].v);
  }
  CHECK(a.gateways == b.gateways);
}

TEST_CASE("unwrapped seam drops one cross-plane ring") {
  const Topology t = build_walker_star(3, 3, 0, false, 5.0, 1.0);
  CHECK(t.num_isl_edges() == 2 * 3 * 3 - 3);
  CHECK(isl_degree(t, 1) == 3);  // first-plane satellites lose a neighbor
  CHECK(validate_topology(t).ok());
}

TEST_CASE("dimension and phase preconditions") {
  CHECK_THROWS_AS(build_walker_star(2, 5, 0, true, 5.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_walker_star(6, 2, 0, true, 5.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_walker_star(6, 5, 5, true, 5.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_walker_star(6, 5, -1, true, 5.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_walker_star(6, 5, 0, true, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("neighbors are ascending; ground sees the gateways") {
  const Topology t = build_walker_star(6, 5, 0, true, 5.0, 1.0);
  for (NodeId s = 1; s <= t.num_satellites; ++s) {
    const auto& nbs = t.neighbors(s);
    for (std::size_t i = 1; i < nbs.size(); ++i) CHECK(nbs[i - 1].node < nbs[i].node);
    CHECK(isl_degree(t, s) == 4);
  }
  const auto& ground = t.neighbors(kGroundNode);
  REQUIRE(ground.size() == 6);
  for (std::size_t i = 0; i < ground.size(); ++i) CHECK(ground[i].node == t.gateways[i]);
  // a gateway's first neighbor is the ground station
  CHECK(t.neighbors(1).front().node == kGroundNode);
}

TEST_CASE("unknown node is rejected") {
  const Topology t = build_walker_star(3, 3, 0, true, 5.0, 1.0);
  CHECK_THROWS_AS(t.neighbors(10), std::out_of_range);
  CHECK_THROWS_AS(t.neighbors(-1), std::out_of_range);
}

TEST_CASE("edge identity is direction-free") {
  const Topology t = build_walker_star(6, 5, 0, true, 5.0, 1.0);
  for (const Edge& e : t.edges) {
    const auto a = t.edge_between(e.u, e.v);
    const auto b = t.edge_between(e.v, e.u);
    REQUIRE(a.has_value());
    CHECK(*a == *b);
    CHECK(t.edges[*a].capacity == e.capacity);
  }
  CHECK_FALSE(t.edge_between(2, 9).has_value());
}

TEST_CASE("validation: reference topology is clean") {
  CHECK(validate_topology(build_walker_star(6, 5, 0, true, 5.0, 1.0)).ok());
}

TEST_CASE("validation: SGL between two satellites is flagged") {
  const Topology t = make_topology(
      3, {{1, 2, EdgeKind::Isl, 5.0}, {2, 3, EdgeKind::Isl, 5.0}, {1, 3, EdgeKind::Sgl, 1.0}});
  const ValidationReport report = validate_topology(t);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations) found |= v.find("SGL endpoint must be ground") != std::string::npos;
  CHECK(found);
}

TEST_CASE("validation: disconnected ISL subgraph is flagged") {
  const Topology t =
      make_topology(4, {{1, 2, EdgeKind::Isl, 5.0}, {3, 4, EdgeKind::Isl, 5.0}});
  const ValidationReport report = validate_topology(t);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations) found |= v.find("ISL graph connected") != std::string::npos;
  CHECK(found);
}

TEST_CASE("validation: nonpositive capacity is flagged") {
  Topology t = make_topology(2, {{1, 2, EdgeKind::Isl, 5.0}});
  t.edges[0].capacity = 0.0;
  CHECK_FALSE(validate_topology(t).ok());
}

TEST_CASE("validation: ISL touching ground is flagged") {
  const Topology t = make_topology(2, {{1, 2, EdgeKind::Isl, 5.0}, {0, 1, EdgeKind::Isl, 5.0}});
  CHECK_FALSE(validate_topology(t).ok());
}
