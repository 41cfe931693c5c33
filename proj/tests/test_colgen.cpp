#include <doctest.h>

#include <cmath>

#include "satcg/baselines.hpp"
#include "satcg/colgen.hpp"

using namespace satcg;

TEST_CASE("no hops allowed degenerates to local-only in one iteration") {
  const Scenario sc = make_reference_scenario(1, 0, 0);
  const ColGenResult r = run_column_generation(sc);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.pool.size() == 0);
  CHECK(r.objective == doctest::Approx(solve_local_only(sc)));
}

TEST_CASE("matches the fully enumerated optimum") {
  for (int h = 1; h <= 3; ++h) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const Scenario sc = make_reference_scenario(seed, h, h);
      const ColGenResult r = run_column_generation(sc);
      REQUIRE(r.converged);
      const double exact = solve_full_enumeration(sc).objective;
      INFO("h ", h, " seed ", seed);
      CHECK(std::fabs(r.objective - exact) <= 1e-6 * (1.0 + std::fabs(exact)));
    }
  }
}

TEST_CASE("trace objectives never decrease") {
  const Scenario sc = make_reference_scenario(11, 3, 3);
  const ColGenResult r = run_column_generation(sc);
  REQUIRE(r.converged);
  REQUIRE(r.trace.size() >= 2);
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i].objective >=
          r.trace[i - 1].objective - 1e-9 * (1.0 + std::fabs(r.trace[i].objective)));
  CHECK(r.trace.back().violations_found == 0);
  CHECK(r.trace.front().columns == 30);  // starts from locals only
}

TEST_CASE("strong duality certificate at convergence") {
  const Scenario sc = make_reference_scenario(5, 4, 4);
  const ColGenResult r = run_column_generation(sc);
  REQUIRE(r.converged);
  CHECK(std::fabs(r.objective - r.dual_objective) <= 1e-7 * (1.0 + std::fabs(r.objective)));
}

TEST_CASE("activates far fewer columns than the route universe at h = 5") {
  const Scenario sc = make_reference_scenario(1, 5, 5);
  const ColGenResult r = run_column_generation(sc);
  REQUIRE(r.converged);
  const std::size_t universe = enumerate_routes(sc.topology, 5, 5).total();
  CHECK(universe == 13938);
  CHECK(r.pool.size() < static_cast<int>(universe));
  CHECK(r.activated_intersat() + r.activated_ground() == r.pool.size());
}

TEST_CASE("volumes decompose the weighted objective") {
  const Scenario sc = make_reference_scenario(2, 3, 3);
  const ColGenResult r = run_column_generation(sc);
  const double recombined = sc.weight_local * r.volume_local() +
                            sc.weight_intersat * r.volume_intersat() +
                            sc.weight_ground * r.volume_ground();
  CHECK(r.objective == doctest::Approx(recombined).epsilon(1e-9));
}

TEST_CASE("colgen solution is feasible for all constraint families") {
  const Scenario sc = make_reference_scenario(4, 3, 3);
  const ColGenResult r = run_column_generation(sc);
  std::vector<Route> routes = r.pool.entries();
  CHECK(check_feasibility(sc, r.x_local, routes, r.flows, 1e-7).empty());
}

TEST_CASE("seeded one-hop pool reaches the same optimum") {
  const Scenario sc = make_reference_scenario(6, 2, 2);
  ColGenOptions opt;
  opt.seed_one_hop_routes = true;
  const ColGenResult seeded = run_column_generation(sc, opt);
  const ColGenResult plain = run_column_generation(sc);
  REQUIRE(seeded.converged);
  CHECK(seeded.objective == doctest::Approx(plain.objective).epsilon(1e-7));
  CHECK(seeded.pool.size() >= 126);
}

TEST_CASE("iteration cap reports non-convergence honestly") {
  const Scenario sc = make_reference_scenario(1, 3, 3);
  ColGenOptions opt;
  opt.max_iterations = 2;
  const ColGenResult r = run_column_generation(sc, opt);
  CHECK_FALSE(r.converged);
  CHECK(r.stop_reason == "iteration limit reached");
  CHECK(r.iterations == 2);
}

TEST_CASE("full-duplex relaxes the shared-capacity optimum") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Scenario shared = make_reference_scenario(seed, 3, 3);
    Scenario duplex = shared;
    duplex.topology = build_walker_star(6, 5, 0, true, 5.0, 1.0, DuplexMode::FullDuplex);
    const ColGenResult a = run_column_generation(shared);
    const ColGenResult b = run_column_generation(duplex);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(b.objective >= a.objective - 1e-7 * (1.0 + std::fabs(a.objective)));
    CHECK(check_dual_feasibility(duplex, b.final_duals,
                                 enumerate_routes(duplex.topology, 3, 3), 1e-6)
              .clean());
  }
}

TEST_CASE("audit passes on a converged run over the full universe") {
  const Scenario sc = make_reference_scenario(3, 2, 2);
  const ColGenResult r = run_column_generation(sc);
  REQUIRE(r.converged);
  const AuditReport report = audit_optimality(sc, r);
  CHECK(report.performed);
  CHECK(report.routes_checked == 510);
  CHECK(report.violations.empty());
}

TEST_CASE("audit flags perturbed duals") {
  const Scenario sc = make_reference_scenario(3, 2, 2);
  const ColGenResult r = run_column_generation(sc);
  DualPrices bad = r.final_duals;
  for (double& g : bad.gamma) g = 0.0;
  for (double& z : bad.zeta) z = 0.0;
  for (double& a : bad.alpha_fwd) a = 0.0;
  for (double& a : bad.alpha_bwd) a = 0.0;
  const AuditReport report =
      check_dual_feasibility(sc, bad, enumerate_routes(sc.topology, 2, 2), 1e-7);
  CHECK(report.performed);
  CHECK_FALSE(report.violations.empty());
  CHECK(report.violations.front().lhs < report.violations.front().rhs);
}

TEST_CASE("audit with no routes is vacuous") {
  const Scenario sc = make_reference_scenario(1, 0, 0);
  const ColGenResult r = run_column_generation(sc);
  const AuditReport report = audit_optimality(sc, r);
  CHECK(report.performed);
  CHECK(report.routes_checked == 0);
  CHECK(report.clean());
}

TEST_CASE("audit skips with notice above the enumeration ceiling") {
  const Scenario sc = make_reference_scenario(1, 3, 3);
  const ColGenResult r = run_column_generation(sc);
  const AuditReport report = audit_optimality(sc, r, 1e-7, /*ceiling=*/50);
  CHECK_FALSE(report.performed);
  CHECK(report.notice.find("audit skipped") != std::string::npos);
}
