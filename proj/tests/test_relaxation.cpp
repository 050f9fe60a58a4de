#include "tcol/relaxation.hpp"

#include <cmath>

#include "doctest.h"
#include "tcol/errors.hpp"
#include "tcol/pseudo.hpp"

using namespace tcol;

namespace {

// Independent verifier of every equality constraint on a raw moment matrix.
// Returns the largest violation.
double raw_constraint_residual(const SymmetricMatrix& m, const RelaxationProblem& p,
                               const std::vector<Pin>& pins = {}) {
  int n = p.graph.n, q = p.alphabet_size();
  auto row = [&](int u, int s) { return 1 + u * q + s; };
  double worst = std::fabs(m(0, 0) - 1.0);
  for (int u = 0; u < n; ++u) {
    double sum = 0.0;
    for (int s = 0; s < q; ++s) {
      sum += m(0, row(u, s));
      worst = std::max(worst, std::fabs(m(row(u, s), row(u, s)) - m(0, row(u, s))));
      for (int t = s + 1; t < q; ++t) worst = std::max(worst, std::fabs(m(row(u, s), row(u, t))));
    }
    worst = std::max(worst, std::fabs(sum - 1.0));
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int s = 0; s < q; ++s) {
        double rsum = 0.0, csum = 0.0;
        for (int t = 0; t < q; ++t) {
          rsum += m(row(u, s), row(v, t));
          csum += m(row(u, t), row(v, s));
        }
        worst = std::max(worst, std::fabs(rsum - m(0, row(u, s))));
        worst = std::max(worst, std::fabs(csum - m(0, row(v, s))));
      }
  for (const auto& [u, v] : p.graph.edges)
    for (int s : p.constrained_symbols())
      worst = std::max(worst, std::fabs(m(row(u, s), row(v, s))));
  for (const Pin& pin : pins)
    worst = std::max(worst, std::fabs(m(0, row(pin.vertex, pin.symbol)) - 1.0));
  if (p.kind == RelaxationKind::coloring && p.delta > 0.0) {
    double mass = 0.0;
    for (int u = 0; u < n; ++u) mass += m(0, row(u, 0));
    worst = std::max(worst, std::max(0.0, mass - p.delta * n));
  }
  if (p.kind == RelaxationKind::independent_set) {
    double mass = 0.0;
    for (int u = 0; u < n; ++u) mass += m(0, row(u, 1));
    worst = std::max(worst, std::max(0.0, (0.5 - p.delta) * n - mass));
  }
  return worst;
}

Graph c4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

}  // namespace

TEST_CASE("exact-hull containment: true distributions satisfy every constraint") {
  // K3 and K_{2,2,2} coloring
  for (int m : {1, 2}) {
    Graph g = complete_multipartite(3, m);
    RelaxationProblem p = build_coloring_relaxation(g, 0.0);
    ExactDistribution d = exact_coloring_distribution(g, 0.0);
    SymmetricMatrix mm = moment_matrix_of(d);
    CHECK(raw_constraint_residual(mm, p) <= 1e-12);
    CHECK(symmetric_eigenvalues(mm).back() >= -1e-9);
  }
  // C4 coloring with budget
  {
    Graph g = c4();
    RelaxationProblem p = build_coloring_relaxation(g, 0.25);
    ExactDistribution d = exact_coloring_distribution(g, 0.25);
    SymmetricMatrix mm = moment_matrix_of(d);
    CHECK(raw_constraint_residual(mm, p) <= 1e-12);
  }
  // C4 independent set
  {
    Graph g = c4();
    RelaxationProblem p = build_is_relaxation(g, 0.0);
    ExactDistribution d = exact_is_distribution(g, 0.0);
    SymmetricMatrix mm = moment_matrix_of(d);
    CHECK(raw_constraint_residual(mm, p) <= 1e-12);
    CHECK(symmetric_eigenvalues(mm).back() >= -1e-9);
  }
}

TEST_CASE("solve K2 coloring: trivially feasible") {
  Graph k2 = complete_multipartite(2, 1);
  SolveResult res = solve(build_coloring_relaxation(k2, 0.0));
  REQUIRE(res.stats.status == SolveStatus::converged);
  REQUIRE(res.distribution != nullptr);
  CHECK(res.stats.min_eigenvalue >= -1e-6);
  CHECK(max_consistency_residual(*res.distribution) <= 1e-5);
}

TEST_CASE("solve K_{2,2,2} coloring: uncolored mass vanishes") {
  Graph g = complete_multipartite(3, 2);
  RelaxationProblem p = build_coloring_relaxation(g, 0.0);
  SolveResult res = solve(p);
  REQUIRE(res.stats.status == SolveStatus::converged);
  const SdpDistribution& d = *res.distribution;
  CHECK(raw_constraint_residual(d.moment_matrix(), p) <= 1e-8);
  CHECK(res.stats.min_eigenvalue >= -1e-6);
  CHECK(max_consistency_residual(d) <= 1e-5);
  CHECK(max_edge_residual(d, g, {1, 2, 3}) <= 1e-5);
  for (int u = 0; u < g.n; ++u) CHECK(d.marginal(u)[0] <= 1e-5);
}

TEST_CASE("solve C4 independent set: mass floor met") {
  Graph g = c4();
  RelaxationProblem p = build_is_relaxation(g, 0.0);
  SolveResult res = solve(p);
  REQUIRE(res.stats.status == SolveStatus::converged);
  const SdpDistribution& d = *res.distribution;
  CHECK(raw_constraint_residual(d.moment_matrix(), p) <= 1e-8);
  double mass = 0.0;
  for (int u = 0; u < g.n; ++u) mass += d.marginal(u)[1];
  CHECK(mass >= 2.0 - 1e-4);
}

TEST_CASE("K3 independent set with floor 1.5 is infeasible") {
  Graph k3 = complete_multipartite(3, 1);
  SolverConfig cfg;
  cfg.max_iterations = 60000;
  SolveResult res = solve(build_is_relaxation(k3, 0.0), cfg);
  CHECK(res.stats.status == SolveStatus::infeasible_evidence);
  CHECK(res.distribution == nullptr);
}

TEST_CASE("coloring budget row") {
  Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  RelaxationProblem with_budget = build_coloring_relaxation(c4, 0.25);
  CHECK(with_budget.has_budget_row());
  CHECK(with_budget.delta * with_budget.graph.n == doctest::Approx(1.0));  // rhs
  CHECK_FALSE(build_coloring_relaxation(c4, 0.0).has_budget_row());

  // C4 is 2-colorable, so the budget is slack and the objective drives the
  // uncolored mass to zero
  SolveResult res = solve(with_budget);
  REQUIRE(res.stats.status == SolveStatus::converged);
  CHECK(res.stats.objective <= 1e-5);

  // K4 needs uncolored mass 1 at this level, so a 0.4 budget cannot be met
  Graph k4 = complete_multipartite(4, 1);
  SolverConfig cfg;
  cfg.max_iterations = 60000;
  SolveResult tight = solve(build_coloring_relaxation(k4, 0.1), cfg);
  CHECK(tight.stats.status == SolveStatus::infeasible_evidence);

  // with budget exactly at the level-2 optimum the problem stays solvable
  SolveResult boundary = solve(build_coloring_relaxation(k4, 0.25), cfg);
  CHECK(boundary.stats.status == SolveStatus::converged);
  double mass = 0.0;
  for (int u = 0; u < 4; ++u) mass += boundary.distribution->marginal(u)[0];
  CHECK(mass <= 1.0 + 1e-5);
}

TEST_CASE("independent-set mass floor above the true maximum is infeasible") {
  Graph g = complete_multipartite(3, 3);  // max independent set 3 < 4.5
  SolverConfig cfg;
  cfg.max_iterations = 60000;
  SolveResult res = solve(build_is_relaxation(g, 0.0), cfg);
  CHECK(res.stats.status == SolveStatus::infeasible_evidence);

  // floor 2.7 <= 3 is attainable
  SolveResult ok = solve(build_is_relaxation(g, 0.2), cfg);
  CHECK(ok.stats.status == SolveStatus::converged);
}

TEST_CASE("K4 coloring at delta=0: solver reports status honestly") {
  // the uncolored symbol keeps the relaxation feasible; the objective
  // pushes mass toward colors as far as the cone allows
  Graph k4 = complete_multipartite(4, 1);
  RelaxationProblem p = build_coloring_relaxation(k4, 0.0);
  SolveResult res = solve(p);
  REQUIRE(res.stats.status == SolveStatus::converged);
  CHECK(raw_constraint_residual(res.distribution->moment_matrix(), p) <= 1e-8);
  // K4 needs one vertex uncolored; the level-2 cone happens to be tight
  // here, so the minimized uncolored mass matches the combinatorial optimum
  CHECK(res.stats.objective == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("determinism: identical solves give identical moments") {
  Graph g = complete_multipartite(3, 2);
  RelaxationProblem p = build_coloring_relaxation(g, 0.0);
  SolveResult a = solve(p);
  SolveResult b = solve(p);
  REQUIRE(a.distribution);
  REQUIRE(b.distribution);
  CHECK(a.stats.iterations == b.stats.iterations);
  for (int u = 0; u < g.n; ++u) {
    auto pa = a.distribution->marginal(u), pb = b.distribution->marginal(u);
    for (int s = 0; s < 4; ++s) CHECK(pa[s] == pb[s]);
  }
}

TEST_CASE("pin_and_resolve") {
  Graph g = complete_multipartite(3, 2);
  RelaxationProblem p = build_coloring_relaxation(g, 0.0);

  SUBCASE("no pins behaves like solve") {
    SolveResult a = solve(p);
    SolveResult b = pin_and_resolve(p, {}, {});
    REQUIRE(a.distribution);
    REQUIRE(b.distribution);
    for (int u = 0; u < g.n; ++u)
      CHECK(a.distribution->marginal(u) == b.distribution->marginal(u));
  }

  SUBCASE("one pin per part forces the whole coloring") {
    std::vector<Pin> pins{{0, 1}, {2, 2}, {4, 3}};
    SolveResult res = pin_and_resolve(p, pins, {});
    REQUIRE(res.stats.status == SolveStatus::converged);
    const SdpDistribution& d = *res.distribution;
    CHECK(raw_constraint_residual(d.moment_matrix(), p, pins) <= 1e-8);
    // both vertices of each part concentrate on the pinned color
    int want[6] = {1, 1, 2, 2, 3, 3};
    for (int u = 0; u < g.n; ++u) CHECK(d.marginal(u)[want[u]] >= 1.0 - 1e-3);
  }

  SUBCASE("adjacent same-color pins are rejected before solving") {
    CHECK_THROWS_AS(pin_and_resolve(p, {{0, 1}, {2, 1}}, {}), InfeasibleError);
    CHECK_THROWS_AS(pin_and_resolve(p, {{0, 1}, {0, 2}}, {}), InfeasibleError);
  }
}

TEST_CASE("conditioning through the distribution interface") {
  Graph g = complete_multipartite(3, 2);
  SolveResult res = solve(build_coloring_relaxation(g, 0.0));
  REQUIRE(res.distribution);
  auto pinned = res.distribution->condition(0, 1);
  CHECK(pinned->marginal(0)[1] >= 1.0 - 1e-5);
  CHECK(max_consistency_residual(*pinned) <= 1e-5);
  // part mate follows, other parts stay spread over the two remaining colors
  CHECK(pinned->marginal(1)[1] >= 1.0 - 1e-3);
  CHECK(pinned->marginal(2)[1] <= 1e-3);

  CHECK_THROWS_AS(pinned->condition(2, 1), ZeroProbabilityError);
}

TEST_CASE("pinsker holds on every pair of a solved relaxation") {
  Graph g = complete_multipartite(3, 2);
  SolveResult res = solve(build_coloring_relaxation(g, 0.0));
  REQUIRE(res.distribution);
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v) CHECK(pinsker_gap(*res.distribution, u, v).holds);
}

TEST_CASE("warm starts preserve determinism") {
  Graph g = complete_multipartite(3, 2);
  RelaxationProblem p = build_coloring_relaxation(g, 0.0);
  SolveResult base = solve(p);
  REQUIRE(base.distribution);
  auto a = base.distribution->condition(0, 1);
  auto b = base.distribution->condition(0, 1);
  for (int u = 0; u < g.n; ++u) CHECK(a->marginal(u) == b->marginal(u));
}
