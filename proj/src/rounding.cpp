#include "tcol/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcol/errors.hpp"

namespace tcol {

namespace {

// ">= threshold" with a 1e-12 slack resolving floating-point ties toward
// exclusion.
bool meets(double value, double threshold) { return value >= threshold + 1e-12; }

void check_simplex(const std::vector<double>& p, const char* name) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -1e-9) throw PreconditionError(std::string(name) + " has a negative entry");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw PreconditionError(std::string(name) + " does not sum to 1");
}

}  // namespace

CorrelationBoundResult correlation_lower_bound(const std::vector<double>& px,
                                               const std::vector<double>& py, double gamma,
                                               double eta) {
  if (!(gamma > 0.0 && gamma < 0.25))
    throw PreconditionError("gamma must lie in (0, 1/4), got " + std::to_string(gamma));
  if (!(eta > 0.0 && eta < 0.25))
    throw PreconditionError("eta must lie in (0, 1/4), got " + std::to_string(eta));
  if (px.size() != 4 || py.size() != 4)
    throw PreconditionError("marginals must have 4 entries (uncolored + 3 colors)");
  check_simplex(px, "px");
  check_simplex(py, "py");
  for (int c = 1; c <= 3; ++c) {
    if (px[c] > 0.5 + gamma + 1e-12)
      throw PreconditionError("px violates the color bound 1/2 + gamma at color " +
                              std::to_string(c));
    if (py[c] > 0.5 + gamma + 1e-12)
      throw PreconditionError("py violates the color bound 1/2 + gamma at color " +
                              std::to_string(c));
  }
  if (px[0] > eta + 1e-12) throw PreconditionError("px violates the uncolored bound eta");
  if (py[0] > eta + 1e-12) throw PreconditionError("py violates the uncolored bound eta");

  CorrelationBoundResult res;
  for (int c = 1; c <= 3; ++c) res.value += px[c] * py[c];
  res.bound = 0.25 - eta / 2.0 - gamma;
  res.holds = res.value >= res.bound - 1e-12;
  res.corrected_bound = 0.25 - eta - gamma;
  res.holds_corrected = res.value >= res.corrected_bound - 1e-12;
  return res;
}

FourColorReport four_color_counterexample() {
  FourColorReport rep;
  rep.px = {0.5, 0.5, 0.0, 0.0};
  rep.py = {0.0, 0.0, 0.5, 0.5};
  rep.correlation = 0.0;
  for (int c = 0; c < 4; ++c) rep.correlation += rep.px[c] * rep.py[c];
  rep.max_marginal = 0.0;
  for (int c = 0; c < 4; ++c)
    rep.max_marginal = std::max({rep.max_marginal, rep.px[c], rep.py[c]});
  return rep;
}

EdgeCorrelationStats edge_local_correlation(const PseudoDistribution& pd, const Graph& g,
                                            const std::vector<int>& constrained_symbols) {
  int q = pd.alphabet_size();
  EdgeCorrelationStats st;
  std::vector<std::vector<double>> marg(g.n);
  for (int u = 0; u < g.n; ++u) marg[u] = pd.marginal(u);

  for (const auto& [u, v] : g.edges) {
    std::vector<double> joint = pd.pairwise(u, v);
    double full = 0.0, restricted = 0.0, simplified = 0.0;
    for (int s = 0; s < q; ++s) {
      double cov = joint[static_cast<std::size_t>(s) * q + s] - marg[u][s] * marg[v][s];
      full += cov * cov;
    }
    for (int s : constrained_symbols) {
      double cov = joint[static_cast<std::size_t>(s) * q + s] - marg[u][s] * marg[v][s];
      restricted += cov * cov;
      double prod = marg[u][s] * marg[v][s];
      simplified += prod * prod;
    }
    st.per_edge_full.push_back(full);
    st.per_edge_restricted.push_back(restricted);
    st.per_edge_simplified.push_back(simplified);
    st.max_discrepancy = std::max(st.max_discrepancy, std::fabs(restricted - simplified));
  }
  auto mean = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  };
  st.average_full = mean(st.per_edge_full);
  st.average_restricted = mean(st.per_edge_restricted);
  st.average_simplified = mean(st.per_edge_simplified);
  return st;
}

LocalCorrelationCheck check_local_correlation_bound(const PseudoDistribution& pd,
                                                     const Graph& g, int r, double lambda) {
  LocalCorrelationCheck res;
  std::vector<int> all_symbols;
  for (int s = 0; s < pd.alphabet_size(); ++s) all_symbols.push_back(s);
  EdgeCorrelationStats st = edge_local_correlation(pd, g, all_symbols);
  res.lhs = st.average_full;
  res.global_corr = global_correlation(pd);
  res.rhs = std::sqrt(2.0 * r * res.global_corr) + lambda;
  res.holds = res.lhs <= res.rhs + 1e-8;
  return res;
}

RoundingReport round_3coloring(const PseudoDistribution& pd, const Graph& g, double gamma) {
  if (pd.alphabet_size() != 4)
    throw PreconditionError("round_3coloring expects the coloring alphabet");
  RoundingReport rep;
  rep.mode = "coloring";
  rep.n = g.n;
  rep.d = g.degree;
  rep.gamma = gamma;
  rep.coloring.assignment.assign(g.n, 0);

  for (int u = 0; u < g.n; ++u) {
    auto p = pd.marginal(u);
    if (meets(p[0], gamma)) rep.set_b.push_back(u);
    int chosen = 0;
    for (int c = 1; c <= 3; ++c)
      if (meets(p[c], 0.5 + gamma)) {
        if (chosen != 0)
          throw BackendInconsistencyError("vertex " + std::to_string(u) +
                                          " exceeds 1/2+gamma on two colors");
        chosen = c;
      }
    if (chosen != 0) {
      rep.coloring.assignment[u] = chosen;
      (chosen == 1 ? rep.set_s1 : chosen == 2 ? rep.set_s2 : rep.set_s3).push_back(u);
      rep.set_s.push_back(u);
    }
  }
  std::vector<char> in_sb(g.n, 0);
  for (int u : rep.set_s) in_sb[u] = 1;
  for (int u : rep.set_b) in_sb[u] = 1;
  for (int u = 0; u < g.n; ++u)
    if (!in_sb[u]) rep.set_t.push_back(u);

  ColoringVerdict verdict = verify_partial_coloring(g, rep.coloring);
  if (!verdict.valid)
    throw BackendInconsistencyError(
        "threshold rounding produced a monochromatic edge; the backend violated its "
        "edge constraints");
  rep.valid = true;
  rep.achieved = static_cast<double>(rep.set_s.size());
  return rep;
}

RoundingReport round_independent_set(const PseudoDistribution& pd, const Graph& g, double eps) {
  if (pd.alphabet_size() != 2)
    throw PreconditionError("round_independent_set expects the {0,1} alphabet");
  double gamma = eps / 100.0;
  RoundingReport rep;
  rep.mode = "independent_set";
  rep.n = g.n;
  rep.d = g.degree;
  rep.eps = eps;
  rep.gamma = gamma;

  for (int u = 0; u < g.n; ++u) {
    auto p = pd.marginal(u);
    if (meets(p[1], 0.5 + gamma)) {
      rep.set_s.push_back(u);
      rep.independent_set.push_back(u);
    }
    if (p[1] <= eps / 2.0) rep.set_a.push_back(u);
  }
  std::vector<char> in_a(g.n, 0);
  for (int u : rep.set_a) in_a[u] = 1;
  for (int u = 0; u < g.n; ++u)
    if (!in_a[u]) rep.set_t.push_back(u);

  std::vector<char> in_s(g.n, 0);
  for (int u : rep.set_s) in_s[u] = 1;
  for (const auto& [u, v] : g.edges)
    if (in_s[u] && in_s[v])
      throw BackendInconsistencyError("rounded set contains edge (" + std::to_string(u) + "," +
                                      std::to_string(v) + "); backend edge constraints broken");
  rep.valid = true;
  rep.achieved = static_cast<double>(rep.set_s.size());
  return rep;
}

namespace {

int auto_rounds(int r, double lambda) {
  double want = std::ceil(r / (lambda * lambda));
  double capped = std::min(want, 12.0);
  return std::max(4, static_cast<int>(capped));
}

void fill_diagnostics(RoundingReport& rep, const PseudoDistribution& pd, const Graph& g,
                      const std::vector<int>& constrained, double threshold) {
  EdgeCorrelationStats st = edge_local_correlation(pd, g, constrained);
  rep.local_correlation = st.average_simplified;
  if (!st.per_edge_simplified.empty()) {
    rep.edge_m_min = *std::min_element(st.per_edge_simplified.begin(),
                                       st.per_edge_simplified.end());
    rep.edge_m_max = *std::max_element(st.per_edge_simplified.begin(),
                                       st.per_edge_simplified.end());
    rep.edge_m_mean = st.average_simplified;
  }

  // edges fully inside T and the handshake inequality 2 e(T) >= (|T|-|rest|) d
  std::vector<char> in_t(g.n, 0);
  for (int u : rep.set_t) in_t[u] = 1;
  rep.t_edge_threshold = threshold;
  double tmin = -1.0;
  std::int64_t t_edges = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (in_t[g.edges[e].first] && in_t[g.edges[e].second]) {
      ++t_edges;
      double m = st.per_edge_simplified[e];
      if (tmin < 0.0 || m < tmin) tmin = m;
    }
  }
  rep.t_edge_count = t_edges;
  rep.t_edge_m_min = tmin < 0.0 ? 0.0 : tmin;
  std::int64_t rest = g.n - static_cast<std::int64_t>(rep.set_t.size());
  rep.edge_count_identity_holds =
      2 * t_edges >= (static_cast<std::int64_t>(rep.set_t.size()) - rest) * g.degree;
}

}  // namespace

RoundingReport solve_3coloring(const Graph& g, double eps, double delta,
                               const PipelineConfig& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0,1)");
  if (delta < 0.0 || delta > 1.0) throw PreconditionError("delta must lie in [0,1]");

  double lambda = eps / 100.0;
  Spectrum spec = random_walk_spectrum(g);
  int r = threshold_rank(spec, lambda);
  double target_corr = lambda * lambda / (2.0 * r);

  std::unique_ptr<PseudoDistribution> pd;
  SolveStats solver_stats;
  bool have_stats = false;
  if (cfg.mode == BackendMode::exact) {
    pd = std::make_unique<ExactDistribution>(
        exact_coloring_distribution(g, delta, cfg.enumeration_cap));
  } else {
    RelaxationProblem prob = build_coloring_relaxation(g, delta);
    SolveResult res = solve(prob, cfg.solver);
    solver_stats = res.stats;
    have_stats = true;
    if (!res.distribution) {
      if (res.stats.status == SolveStatus::infeasible_evidence)
        throw InfeasibleError("coloring relaxation: infeasibility evidence (dual growth " +
                              std::to_string(res.stats.dual_growth) + ")");
      throw SolverError("coloring relaxation did not converge within the iteration cap");
    }
    pd = std::move(res.distribution);
  }

  ConditioningOptions opt;
  opt.max_prefix = cfg.rounds > 0 ? cfg.rounds : auto_rounds(r, lambda);
  opt.samples = cfg.samples > 0 ? cfg.samples : (cfg.mode == BackendMode::exact ? 200 : 4);
  opt.target = target_corr;
  opt.seed = cfg.seed;
  opt.stop_at_target = cfg.mode == BackendMode::sdp;
  auto [best, transcript] = conditioning_loop(*pd, opt);

  RoundingReport rep = round_3coloring(*best, g, 0.001);
  rep.backend = cfg.mode == BackendMode::exact ? "exact" : "sdp";
  rep.eps = eps;
  rep.delta = delta;
  rep.lambda = lambda;
  rep.r = r;
  rep.global_correlation = transcript.best_correlation;
  rep.conditioning_target = target_corr;
  rep.conditioning_rounds = transcript.best_prefix;
  rep.conditioning_samples = opt.samples;
  rep.transcript = std::move(transcript);
  rep.lambda_below_solver_tolerance =
      cfg.mode == BackendMode::sdp && lambda < cfg.solver.tolerance;
  rep.solver_stats = solver_stats;
  rep.has_solver_stats = have_stats;

  // guarantee ledger: coverage target (1/2 - eps) n - c delta n with the
  // documented reporting constant c = 20 (|B| <= (delta/gamma) n by Markov)
  rep.markov_b_bound = delta > 0.0 ? (delta / rep.gamma) * g.n : 0.0;
  rep.local_correlation_cap = eps / 50.0;
  double target = (0.5 - eps) * g.n - 20.0 * delta * g.n;
  rep.degenerate_target = target <= 0.0;
  rep.target = target;
  rep.target_met = rep.degenerate_target || rep.achieved >= target;

  fill_diagnostics(rep, *best, g, {1, 2, 3}, 1.0 / 50.0);
  return rep;
}

RoundingReport solve_max_is(const Graph& g, double eps, double delta, const PipelineConfig& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0,1)");
  if (!(delta >= 0.0 && delta < 0.5)) throw PreconditionError("delta must lie in [0, 1/2)");

  double lambda = std::pow(eps, 5) / 100.0;
  Spectrum spec = random_walk_spectrum(g);
  int r = threshold_rank(spec, lambda);
  double target_corr = lambda * lambda / (2.0 * r);
  int min_size = static_cast<int>(std::ceil((0.5 - delta) * g.n - 1e-9));

  std::unique_ptr<PseudoDistribution> pd;
  SolveStats solver_stats;
  bool have_stats = false;
  if (cfg.mode == BackendMode::exact) {
    if (g.n <= 30) {
      auto best_is = max_independent_set_bruteforce(g, 30);
      if (static_cast<int>(best_is.size()) < min_size)
        throw InfeasibleError("graph has no independent set of size " +
                              std::to_string(min_size) + " (maximum is " +
                              std::to_string(best_is.size()) + ")");
    }
    pd = std::make_unique<ExactDistribution>(
        exact_is_distribution(g, delta, cfg.enumeration_cap));
  } else {
    RelaxationProblem prob = build_is_relaxation(g, delta);
    SolveResult res = solve(prob, cfg.solver);
    solver_stats = res.stats;
    have_stats = true;
    if (!res.distribution) {
      if (res.stats.status == SolveStatus::infeasible_evidence)
        throw InfeasibleError("independent-set relaxation: infeasibility evidence (dual growth " +
                              std::to_string(res.stats.dual_growth) + ")");
      throw SolverError("independent-set relaxation did not converge");
    }
    pd = std::move(res.distribution);
  }

  ConditioningOptions opt;
  opt.max_prefix = cfg.rounds > 0 ? cfg.rounds : auto_rounds(r, lambda);
  opt.samples = cfg.samples > 0 ? cfg.samples : (cfg.mode == BackendMode::exact ? 200 : 4);
  opt.target = target_corr;
  opt.seed = cfg.seed;
  opt.stop_at_target = cfg.mode == BackendMode::sdp;
  auto [best, transcript] = conditioning_loop(*pd, opt);

  RoundingReport rep = round_independent_set(*best, g, eps);
  rep.backend = cfg.mode == BackendMode::exact ? "exact" : "sdp";
  rep.delta = delta;
  rep.lambda = lambda;
  rep.r = r;
  rep.global_correlation = transcript.best_correlation;
  rep.conditioning_target = target_corr;
  rep.conditioning_rounds = transcript.best_prefix;
  rep.conditioning_samples = opt.samples;
  rep.transcript = std::move(transcript);
  rep.lambda_below_solver_tolerance =
      cfg.mode == BackendMode::sdp && lambda < cfg.solver.tolerance;
  rep.solver_stats = solver_stats;
  rep.has_solver_stats = have_stats;

  rep.local_correlation_cap = std::pow(eps, 5) / 50.0;
  double target = (0.5 - 2.0 * delta - eps) * g.n;
  rep.degenerate_target = target <= 0.0;
  rep.target = target;
  rep.target_met = rep.degenerate_target || rep.achieved >= target;

  fill_diagnostics(rep, *best, g, {1}, std::pow(eps / 2.0, 4));
  return rep;
}

}  // namespace tcol
