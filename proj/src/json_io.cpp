#include "tcol/json_io.hpp"

#include <algorithm>

namespace tcol {

ordered_json transcript_to_json(const ConditioningTranscript& tr) {
  ordered_json j;
  j["initial_correlation"] = tr.initial_correlation;
  j["best_correlation"] = tr.best_correlation;
  j["best_sequence"] = tr.best_sequence;
  j["best_prefix"] = tr.best_prefix;
  j["target"] = tr.target;
  j["succeeded"] = tr.succeeded;
  ordered_json seqs = ordered_json::array();
  for (const auto& rec : tr.sequences) {
    ordered_json steps = ordered_json::array();
    for (std::size_t k = 0; k < rec.steps.size(); ++k) {
      ordered_json step;
      step["vertex"] = rec.steps[k].vertex;
      step["value"] = rec.steps[k].symbol;
      step["post_correlation"] = rec.correlation_by_prefix[k + 1];
      steps.push_back(std::move(step));
    }
    seqs.push_back(std::move(steps));
  }
  j["sequences"] = std::move(seqs);
  return j;
}

ordered_json report_to_json(const RoundingReport& rep) {
  ordered_json j;
  j["mode"] = rep.mode;
  j["n"] = rep.n;
  j["d"] = rep.d;
  j["eps"] = rep.eps;
  j["delta"] = rep.delta;
  j["lambda"] = rep.lambda;
  j["r"] = rep.r;
  j["gamma"] = rep.gamma;
  j["global_correlation"] = rep.global_correlation;
  j["local_correlation"] = rep.local_correlation;

  ordered_json sets;
  if (rep.mode == "coloring") {
    sets["B"] = rep.set_b;
    sets["S1"] = rep.set_s1;
    sets["S2"] = rep.set_s2;
    sets["S3"] = rep.set_s3;
    sets["S"] = rep.set_s;
    sets["T"] = rep.set_t;
  } else {
    sets["S"] = rep.set_s;
    sets["A"] = rep.set_a;
    sets["T"] = rep.set_t;
  }
  j["sets"] = std::move(sets);

  if (rep.mode == "coloring")
    j["coloring"] = rep.coloring.assignment;
  else
    j["independent_set"] = rep.independent_set;
  j["valid"] = rep.valid;
  j["target"] = rep.target;
  j["achieved"] = rep.achieved;

  ordered_json diag;
  ordered_json mstats;
  mstats["min"] = rep.edge_m_min;
  mstats["mean"] = rep.edge_m_mean;
  mstats["max"] = rep.edge_m_max;
  mstats["t_edge_min"] = rep.t_edge_m_min;
  mstats["t_edge_count"] = rep.t_edge_count;
  mstats["threshold"] = rep.t_edge_threshold;
  diag["per_edge_M_stats"] = std::move(mstats);
  diag["markov_B_bound"] = rep.markov_b_bound;
  diag["edge_count_identity"] = rep.edge_count_identity_holds;
  diag["local_correlation_cap"] = rep.local_correlation_cap;
  diag["backend"] = rep.backend;
  diag["target_met"] = rep.target_met;
  diag["degenerate_target"] = rep.degenerate_target;
  diag["lambda_below_solver_tolerance"] = rep.lambda_below_solver_tolerance;
  ordered_json cond;
  cond["target"] = rep.conditioning_target;
  cond["rounds_used"] = rep.conditioning_rounds;
  cond["samples"] = rep.conditioning_samples;
  cond["best_correlation"] = rep.transcript.best_correlation;
  diag["conditioning"] = std::move(cond);
  if (rep.has_solver_stats) {
    ordered_json sol;
    sol["iterations"] = rep.solver_stats.iterations;
    sol["primal_residual"] = rep.solver_stats.primal_residual;
    sol["dual_residual"] = rep.solver_stats.dual_residual;
    sol["min_eigenvalue"] = rep.solver_stats.min_eigenvalue;
    sol["objective"] = rep.solver_stats.objective;
    diag["solver"] = std::move(sol);
  }
  j["diagnostics"] = std::move(diag);
  return j;
}

ordered_json spectrum_summary_json(const Spectrum& s, int head_tail) {
  ordered_json j;
  int n = s.n();
  int k = std::min(head_tail, n);
  ordered_json head = ordered_json::array(), tail = ordered_json::array();
  for (int i = 0; i < k; ++i) head.push_back(s.eigenvalues[i]);
  for (int i = std::max(0, n - k); i < n; ++i) tail.push_back(s.eigenvalues[i]);
  j["n"] = n;
  j["head"] = std::move(head);
  j["tail"] = std::move(tail);
  return j;
}

ordered_json problem_to_json(const RelaxationProblem& p) {
  ordered_json j;
  j["kind"] = p.kind == RelaxationKind::coloring ? "coloring" : "independent_set";
  j["n"] = p.graph.n;
  j["d"] = p.graph.degree;
  j["alphabet"] = p.alphabet_size();
  j["moment_order"] = p.moment_order();
  j["delta"] = p.delta;
  int n = p.graph.n, q = p.alphabet_size();
  j["constraints"] = {
      {"simplex_rows", n},
      {"booleanity_rows", n * q},
      {"exclusivity_rows", n * q * (q - 1) / 2},
      {"consistency_rows", n * (n - 1) / 2 * 2 * q},
      {"edge_rows", static_cast<int>(p.graph.edges.size()) *
                        static_cast<int>(p.constrained_symbols().size())},
      {"budget_rows", p.has_budget_row() ? 1 : 0},
  };
  return j;
}

ordered_json solution_to_json(const SdpDistribution& dist) {
  ordered_json j;
  j["problem"] = problem_to_json(dist.problem());
  ordered_json pins = ordered_json::array();
  for (const Pin& p : dist.pins()) pins.push_back({{"vertex", p.vertex}, {"symbol", p.symbol}});
  j["pins"] = std::move(pins);

  ordered_json marginals = ordered_json::array();
  for (int u = 0; u < dist.num_vars(); ++u) marginals.push_back(dist.marginal(u));
  j["marginals"] = std::move(marginals);

  j["consistency_residual"] = max_consistency_residual(dist);
  j["edge_residual"] =
      max_edge_residual(dist, dist.problem().graph, dist.problem().constrained_symbols());
  auto eigs = symmetric_eigenvalues(dist.moment_matrix());
  j["moment_eigenvalue_max"] = eigs.front();
  j["moment_eigenvalue_min"] = eigs.back();
  j["solver"] = {{"iterations", dist.stats().iterations},
                 {"primal_residual", dist.stats().primal_residual},
                 {"dual_residual", dist.stats().dual_residual},
                 {"objective", dist.stats().objective}};
  return j;
}

}  // namespace tcol
