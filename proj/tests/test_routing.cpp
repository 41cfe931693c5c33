#include <doctest.h>

#include <set>

#include "satcg/route.hpp"
#include "satcg/topology.hpp"

using namespace satcg;

namespace {

Topology reference() { return build_walker_star(6, 5, 0, true, 5.0, 1.0); }

Topology two_sat_line() { return make_topology(2, {{1, 2, EdgeKind::Isl, 5.0}}); }

}  // namespace

TEST_CASE("hop-bounded counts on the reference grid") {
  const Topology topo = reference();
  // per-hop-level increments derive from the 4-regular girth-4 torus:
  // inter-satellite 120/+360/+1080, ground 6/+24/+72
  const RouteSets h1 = enumerate_routes(topo, 1, 1);
  CHECK(h1.intersat.size() == 120);
  CHECK(h1.ground.size() == 6);
  CHECK(h1.total() == 126);

  const RouteSets h2 = enumerate_routes(topo, 2, 2);
  CHECK(h2.intersat.size() == 480);
  CHECK(h2.ground.size() == 30);
  CHECK(h2.total() == 510);

  const RouteSets h3 = enumerate_routes(topo, 3, 3);
  CHECK(h3.intersat.size() == 1560);
  CHECK(h3.ground.size() == 102);
  CHECK(h3.total() == 1662);

  const RouteSets h4 = enumerate_routes(topo, 4, 4);
  CHECK(h4.total() == 4878);
}

TEST_CASE("independent hop limits") {
  const Topology topo = reference();
  const RouteSets sets = enumerate_routes(topo, 0, 2);
  CHECK(sets.intersat.empty());
  CHECK(sets.ground.size() == 30);
  const RouteSets sets2 = enumerate_routes(topo, 1, 0);
  CHECK(sets2.intersat.size() == 120);
  CHECK(sets2.ground.empty());
}

TEST_CASE("zero hop limits exclude all routes") {
  CHECK(enumerate_routes(reference(), 0, 0).total() == 0);
}

TEST_CASE("all enumerated routes satisfy their invariants") {
  const Topology topo = reference();
  const RouteSets sets = enumerate_routes(topo, 3, 3);
  for (const Route& r : sets.intersat) CHECK_FALSE(route_violation(topo, r, 3, 3).has_value());
  for (const Route& r : sets.ground) CHECK_FALSE(route_violation(topo, r, 3, 3).has_value());
}

TEST_CASE("counts are monotone in both hop limits") {
  const Topology topo = build_walker_star(3, 3, 0, true, 1.0, 1.0);
  std::size_t prev = 0;
  for (int h = 0; h <= 4; ++h) {
    const std::size_t total = enumerate_routes(topo, h, h).total();
    CHECK(total >= prev);
    prev = total;
  }
  for (int hg = 0; hg <= 3; ++hg) {
    CHECK(enumerate_routes(topo, 2, hg).total() <= enumerate_routes(topo, 2, hg + 1).total());
    CHECK(enumerate_routes(topo, hg, 2).total() <= enumerate_routes(topo, hg + 1, 2).total());
  }
}

TEST_CASE("inter-satellite enumeration is closed under reversal") {
  const Topology topo = reference();
  const RouteSets sets = enumerate_routes(topo, 2, 2);
  std::set<std::vector<NodeId>> all;
  for (const Route& r : sets.intersat) all.insert(r.vertices);
  for (const Route& r : sets.intersat) {
    std::vector<NodeId> rev(r.vertices.rbegin(), r.vertices.rend());
    CHECK(all.count(rev) == 1);
  }
}

TEST_CASE("enumeration order is deterministic") {
  const Topology topo = reference();
  const RouteSets a = enumerate_routes(topo, 2, 2);
  const RouteSets b = enumerate_routes(topo, 2, 2);
  CHECK(a.intersat == b.intersat);
  CHECK(a.ground == b.ground);
}

TEST_CASE("route ceiling guard") {
  CHECK_THROWS_AS(enumerate_routes(reference(), 3, 3, 100), EnumerationCeilingError);
}

TEST_CASE("route_violation catches malformed routes") {
  const Topology topo = reference();
  // vertex repeat
  CHECK(route_violation(topo, {RouteKind::InterSatellite, {2, 3, 2}}, 3, 3).has_value());
  // not an edge
  CHECK(route_violation(topo, {RouteKind::InterSatellite, {1, 9}}, 3, 3).has_value());
  // hop limit
  const Route long_route{RouteKind::InterSatellite, {2, 3, 4, 5}};
  CHECK_FALSE(route_violation(topo, long_route, 3, 3).has_value());
  CHECK(route_violation(topo, long_route, 2, 3).has_value());
  // ground route must end at node 0 over an SGL
  CHECK(route_violation(topo, {RouteKind::SatelliteToGround, {2, 3}}, 3, 3).has_value());
  CHECK(route_violation(topo, {RouteKind::SatelliteToGround, {2, 0}}, 3, 3).has_value());  // 2 has no SGL
  CHECK_FALSE(route_violation(topo, {RouteKind::SatelliteToGround, {2, 1, 0}}, 3, 3).has_value());
  // inter-satellite routes stay off the ground node
  CHECK(route_violation(topo, {RouteKind::InterSatellite, {1, 0}}, 3, 3).has_value());
}

TEST_CASE("route index on a single one-hop route") {
  const Topology topo = two_sat_line();
  RouteSets sets;
  sets.intersat.push_back({RouteKind::InterSatellite, {1, 2}});
  const RouteIndex idx = build_route_index(topo, sets);
  const RouteRef ref{RouteKind::InterSatellite, 0};
  REQUIRE(idx.by_edge[0].size() == 1);
  CHECK(idx.by_edge[0][0] == ref);
  CHECK(idx.intersat_from[1] == std::vector<RouteRef>{ref});
  CHECK(idx.intersat_to[2] == std::vector<RouteRef>{ref});
  CHECK(idx.ground_from[1].empty());
}

TEST_CASE("each satellite sources exactly 4 one-hop routes on the grid") {
  const Topology topo = reference();
  const RouteSets sets = enumerate_routes(topo, 1, 1);
  const RouteIndex idx = build_route_index(topo, sets);
  for (NodeId s = 1; s <= topo.num_satellites; ++s)
    CHECK(idx.intersat_from[s].size() == 4);
}

TEST_CASE("empty route set gives an empty index") {
  const RouteIndex idx = build_route_index(two_sat_line(), {});
  CHECK(idx.by_edge[0].empty());
  CHECK(idx.intersat_from[1].empty());
}

TEST_CASE("index is consistent with route incidence") {
  const Topology topo = reference();
  const RouteSets sets = enumerate_routes(topo, 2, 2);
  const RouteIndex idx = build_route_index(topo, sets);

  // sum of per-edge bucket sizes equals the sum of route hop counts
  std::size_t bucket_total = 0;
  for (const auto& bucket : idx.by_edge) bucket_total += bucket.size();
  std::size_t hop_total = 0;
  for (const Route& r : sets.intersat) hop_total += r.hops();
  for (const Route& r : sets.ground) hop_total += r.hops();
  CHECK(bucket_total == hop_total);

  // membership check both directions on a sample edge
  for (int e = 0; e < 3; ++e) {
    for (const RouteRef& ref : idx.by_edge[e]) {
      const Route& r = ref.kind == RouteKind::InterSatellite ? sets.intersat[ref.index]
                                                             : sets.ground[ref.index];
      bool crosses = false;
      for (std::size_t i = 0; i + 1 < r.vertices.size(); ++i)
        crosses |= topo.edge_between(r.vertices[i], r.vertices[i + 1]) == e;
      CHECK(crosses);
    }
  }
}
