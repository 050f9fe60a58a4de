#pragma once

#include <memory>
#include <vector>

#include "tcol/graph.hpp"
#include "tcol/linalg.hpp"
#include "tcol/pseudo.hpp"

namespace tcol {

enum class RelaxationKind { coloring, independent_set };

// Pairwise local distributions plus one PSD moment block of order 1+n*q.
// Constraints: per-vertex simplex, booleanity (diagonal = first row),
// within-vertex exclusivity, pairwise->marginal consistency for all pairs,
// entrywise [0,1], diagonal zeros on edges for the constrained symbols, and
// the delta budget (coloring, delta > 0) or mass floor (independent set).
struct RelaxationProblem {
  RelaxationKind kind = RelaxationKind::coloring;
  Graph graph;
  double delta = 0.0;

  int alphabet_size() const { return kind == RelaxationKind::coloring ? 4 : 2; }
  int moment_order() const { return 1 + graph.n * alphabet_size(); }
  // Symbols whose diagonal pairwise mass is forced to zero across edges.
  std::vector<int> constrained_symbols() const {
    return kind == RelaxationKind::coloring ? std::vector<int>{1, 2, 3} : std::vector<int>{1};
  }
  bool has_budget_row() const {
    return kind == RelaxationKind::independent_set || delta > 0.0;
  }
};

// Objective: minimize total uncolored mass (also when delta = 0).
RelaxationProblem build_coloring_relaxation(const Graph& g, double delta);
// Feasibility problem with mass floor sum p_u(1) >= (1/2 - delta) n.
RelaxationProblem build_is_relaxation(const Graph& g, double delta);

struct Pin {
  int vertex = -1;
  int symbol = -1;
};

// Payload for restarting the operator-splitting iteration from a previous
// solve; value-copied, never shared mutably.
struct WarmStart {
  std::vector<double> z_psd, z_box, u_psd, u_box;
  double slack_z_psd = 0.0, slack_z_box = 0.0, slack_u_psd = 0.0, slack_u_box = 0.0;
  double rho = 0.0;
};

struct SolverConfig {
  double tolerance = 1e-7;       // primal/dual Frobenius residual
  int max_iterations = 200000;
  double over_relaxation = 1.6;
  double rho = 1.0;              // initial penalty; rebalanced periodically
  int balance_period = 100;
  std::shared_ptr<const WarmStart> warm_start;
};

enum class SolveStatus { converged, iteration_cap, infeasible_evidence };

struct SolveStats {
  SolveStatus status = SolveStatus::iteration_cap;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double min_eigenvalue = 0.0;  // of the returned (affine-feasible) moment matrix
  double objective = 0.0;       // uncolored mass (coloring) / 0 (independent set)
  double dual_growth = 0.0;     // diagnostics for the infeasibility heuristic
};

// Moment-matrix view of the solved relaxation. Conditioning pins the
// requested marginal to 1 and re-solves with a warm start.
class SdpDistribution final : public PseudoDistribution {
 public:
  int num_vars() const override { return problem_->graph.n; }
  int alphabet_size() const override { return problem_->alphabet_size(); }
  std::vector<double> marginal(int u) const override;
  std::vector<double> pairwise(int u, int v) const override;
  std::unique_ptr<PseudoDistribution> condition(int vertex, int symbol) const override;
  std::unique_ptr<PseudoDistribution> clone() const override;

  const SolveStats& stats() const { return stats_; }
  const std::vector<Pin>& pins() const { return pins_; }
  const SymmetricMatrix& moment_matrix() const { return moment_; }
  const RelaxationProblem& problem() const { return *problem_; }

 private:
  friend struct AdmmSolver;
  std::shared_ptr<const RelaxationProblem> problem_;
  std::vector<Pin> pins_;
  SolverConfig config_;
  SymmetricMatrix moment_;
  SolveStats stats_;
  std::shared_ptr<const WarmStart> warm_;
};

struct SolveResult {
  SolveStats stats;
  std::unique_ptr<SdpDistribution> distribution;  // null unless converged
};

SolveResult solve(const RelaxationProblem& p, const SolverConfig& cfg = {});

// Adds marginal(vertex)(symbol) = 1 rows and re-solves. Pins that contradict
// each other or put a constrained symbol on both ends of an edge raise
// InfeasibleError before any iteration runs.
SolveResult pin_and_resolve(const RelaxationProblem& p, const std::vector<Pin>& pins,
                            const SolverConfig& cfg = {});

// Moment matrix of any marginal/pairwise backend: row/column 0 is the
// constant-one moment, entry ((u,s),(v,t)) the pairwise mass.
SymmetricMatrix moment_matrix_of(const PseudoDistribution& pd);

}  // namespace tcol
