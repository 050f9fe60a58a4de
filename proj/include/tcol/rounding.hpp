#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcol/graph.hpp"
#include "tcol/pseudo.hpp"
#include "tcol/relaxation.hpp"
#include "tcol/spectral.hpp"

namespace tcol {

struct CorrelationBoundResult {
  double value = 0.0;           // sum over colors of px(c) * py(c)
  double bound = 0.0;           // 1/4 - eta/2 - gamma
  bool holds = false;           // value >= bound - 1e-12
  double corrected_bound = 0.0; // 1/4 - eta - gamma
  bool holds_corrected = false;
};

// px and py are distributions over {uncolored, color1..3} (index 0 is the
// uncolored symbol). Requires gamma, eta in (0, 1/4), color mass at most
// 1/2 + gamma and uncolored mass at most eta on both sides.
//
// `bound` is the advertised constant 1/4 - eta/2 - gamma. It is NOT valid
// over the whole precondition box: marginals such as (0.6, 0.3, 0, bot 0.1)
// against (0, 0.3, 0.6, bot 0.1) at gamma = eta = 0.1 reach 0.09 < 0.10.
// Carrying the uncolored mass of the second variable through the
// rearrangement argument yields the provable constant 1/4 - eta - gamma
// (`corrected_bound`); the exact minimum over the box is (1/2-gamma-eta)^2.
// Both thresholds clear the 1/50 edge bound the coloring pipeline uses.
CorrelationBoundResult correlation_lower_bound(const std::vector<double>& px,
                                               const std::vector<double>& py, double gamma,
                                               double eta);

// Two marginals over four colors, each spread over two disjoint colors: both
// stay below 1/2 everywhere yet their color overlap is exactly zero. This is
// why the threshold rounding is a 3-color phenomenon.
struct FourColorReport {
  std::vector<double> px, py;
  double correlation = 0.0;
  double max_marginal = 0.0;
};
FourColorReport four_color_counterexample();

struct EdgeCorrelationStats {
  std::vector<double> per_edge_full;        // covariance^2 over the whole alphabet
  std::vector<double> per_edge_restricted;  // covariance^2 over constrained symbols
  std::vector<double> per_edge_simplified;  // sum of p_u(s)^2 p_v(s)^2, constrained symbols
  double average_full = 0.0;
  double average_restricted = 0.0;
  double average_simplified = 0.0;
  double max_discrepancy = 0.0;  // worst |restricted - simplified| over edges
};

EdgeCorrelationStats edge_local_correlation(const PseudoDistribution& pd, const Graph& g,
                                            const std::vector<int>& constrained_symbols);

struct LocalCorrelationCheck {
  double lhs = 0.0;          // full-alphabet local correlation (edge average)
  double rhs = 0.0;          // sqrt(2 r delta) + lambda, delta = global correlation
  double global_corr = 0.0;
  bool holds = false;
};

// Global-correlation -> local-correlation bound on a graph with at most r
// random-walk eigenvalues above lambda.
LocalCorrelationCheck check_local_correlation_bound(const PseudoDistribution& pd, const Graph& g,
                                                     int r, double lambda);

struct RoundingReport {
  std::string mode;     // "coloring" | "independent_set"
  std::string backend;  // "exact" | "sdp"
  int n = 0, d = 0;
  double eps = 0.0, delta = 0.0, lambda = 0.0, gamma = 0.0;
  int r = 0;

  double global_correlation = 0.0;  // of the rounded (conditioned) distribution
  double local_correlation = 0.0;   // simplified edge average
  double local_correlation_cap = 0.0;

  std::vector<int> set_b, set_s1, set_s2, set_s3, set_s, set_t, set_a;
  PartialColoring coloring;          // coloring mode
  std::vector<int> independent_set;  // IS mode
  bool valid = false;

  double target = 0.0;
  double achieved = 0.0;
  bool target_met = false;
  bool degenerate_target = false;
  bool lambda_below_solver_tolerance = false;

  // diagnostics: the quantities the coverage argument runs on
  double markov_b_bound = 0.0;         // (delta / gamma) * n
  double edge_m_min = 0.0, edge_m_mean = 0.0, edge_m_max = 0.0;
  double t_edge_m_min = 0.0;           // min simplified M over edges inside T
  std::int64_t t_edge_count = 0;       // e(T)
  double t_edge_threshold = 0.0;       // 1/50 (coloring) or (eps/2)^4 (IS)
  bool edge_count_identity_holds = false;  // 2 e(T) >= (|T| - |rest|) d

  double conditioning_target = 0.0;
  int conditioning_rounds = 0;
  int conditioning_samples = 0;
  ConditioningTranscript transcript;

  bool has_solver_stats = false;
  SolveStats solver_stats;
};

// Threshold rounding of a coloring backend: B collects vertices with
// uncolored mass >= gamma, S_c those with color mass >= 1/2 + gamma. The
// rounded coloring is re-verified; a monochromatic edge means broken
// backend edge constraints and raises BackendInconsistencyError.
RoundingReport round_3coloring(const PseudoDistribution& pd, const Graph& g,
                               double gamma = 0.001);

// Same for the independent-set program with gamma = eps/100 and the
// low-mass set A = {u : p_u(1) <= eps/2}.
RoundingReport round_independent_set(const PseudoDistribution& pd, const Graph& g, double eps);

enum class BackendMode { exact, sdp };

struct PipelineConfig {
  BackendMode mode = BackendMode::exact;
  std::uint64_t seed = 1;
  int rounds = 0;           // conditioning rounds per sequence; 0 = auto
  int samples = 0;          // sampled sequences; 0 = auto (200 exact, 4 sdp)
  int enumeration_cap = 20; // exact-backend brute-force cap
  SolverConfig solver;
};

// End-to-end: measure the spectrum, solve the chosen backend, drive the
// global correlation below lambda^2/(2r) by conditioning, round, verify and
// fill the guarantee ledger. Misses are reported, not thrown.
RoundingReport solve_3coloring(const Graph& g, double eps, double delta,
                               const PipelineConfig& cfg = {});

RoundingReport solve_max_is(const Graph& g, double eps, double delta,
                            const PipelineConfig& cfg = {});

}  // namespace tcol
