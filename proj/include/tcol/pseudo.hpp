#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "tcol/graph.hpp"

namespace tcol {

// Marginal/pairwise view of a distribution-like object over Sigma^n.
//
// Symbol conventions: for 3-coloring the alphabet is {0,1,2,3} where 0 is
// the "uncolored" symbol and 1..3 are colors (matching PartialColoring); for
// independent sets it is {0,1} with 1 = "in the set".
//
// Contract: marginal(u) and pairwise(u,v) are simplex vectors (length q and
// q*q row-major, p(sigma_u, sigma_v)); marginalizing pairwise over either
// coordinate reproduces the marginals up to the backend's tolerance;
// pairwise(u,u) is diagonal. Instances are immutable; condition() returns a
// new instance with marginal(vertex)(symbol) = 1.
class PseudoDistribution {
 public:
  virtual ~PseudoDistribution() = default;
  virtual int num_vars() const = 0;
  virtual int alphabet_size() const = 0;
  virtual std::vector<double> marginal(int u) const = 0;
  virtual std::vector<double> pairwise(int u, int v) const = 0;
  virtual std::unique_ptr<PseudoDistribution> condition(int vertex, int symbol) const = 0;
  virtual std::unique_ptr<PseudoDistribution> clone() const = 0;
};

// True distribution with finite support; conditioning is literal Bayes.
class ExactDistribution final : public PseudoDistribution {
 public:
  // Uniform over the support when weights is empty. Weights are normalized
  // with compensated summation.
  ExactDistribution(int alphabet_size, std::vector<std::vector<int>> support,
                    std::vector<double> weights = {});

  int num_vars() const override { return n_; }
  int alphabet_size() const override { return q_; }
  std::vector<double> marginal(int u) const override;
  std::vector<double> pairwise(int u, int v) const override;
  std::unique_ptr<PseudoDistribution> condition(int vertex, int symbol) const override;
  std::unique_ptr<PseudoDistribution> clone() const override;

  const std::vector<std::vector<int>>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int n_ = 0;
  int q_ = 0;
  std::vector<std::vector<int>> support_;
  std::vector<double> weights_;
};

// Uniform over all proper partial 3-colorings with at most floor(delta*n)
// uncolored vertices. Throws InfeasibleError when none exists.
ExactDistribution exact_coloring_distribution(const Graph& g, double delta, int cap = 20);

// Uniform over all independent sets of size >= ceil((1/2 - delta) * n).
ExactDistribution exact_is_distribution(const Graph& g, double delta, int cap = 20);

// Shannon entropy of a simplex vector, in nats.
double entropy(const std::vector<double>& p);

// I(X_u; X_v) in nats; I(X_u; X_u) is the entropy of the marginal. Values
// in [-1e-6, 0) arising from backend tolerance are clipped to 0; anything
// below -1e-6 raises ToleranceError.
double mutual_information(const PseudoDistribution& pd, int u, int v);

// Average of mutual_information over all ordered pairs in [n]^2, diagonal
// included.
double global_correlation(const PseudoDistribution& pd);

struct PinskerResult {
  double l1_distance = 0.0;  // || joint - product of marginals ||_1
  double bound = 0.0;        // sqrt(2 * MI)
  bool holds = false;        // l1 <= bound + 1e-9
};

PinskerResult pinsker_gap(const PseudoDistribution& pd, int u, int v);

// Largest violation of pairwise->marginal consistency, pairwise symmetry,
// simplex normalization and nonnegativity across all pairs.
double max_consistency_residual(const PseudoDistribution& pd);

// Largest mass any edge places on a constrained diagonal symbol
// (colors 1..3 for coloring, symbol 1 for independent set).
double max_edge_residual(const PseudoDistribution& pd, const Graph& g,
                         const std::vector<int>& constrained_symbols);

struct ConditioningStep {
  int vertex = -1;
  int symbol = -1;
};

struct SequenceRecord {
  std::vector<ConditioningStep> steps;
  std::vector<double> correlation_by_prefix;  // index k = after conditioning on steps[0..k)
};

struct ConditioningTranscript {
  std::vector<SequenceRecord> sequences;
  double initial_correlation = 0.0;
  double best_correlation = 0.0;
  int best_sequence = -1;  // -1 means the unconditioned distribution won
  int best_prefix = 0;
  double target = 0.0;
  bool succeeded = false;
};

struct ConditioningOptions {
  int max_prefix = 4;  // number of conditioning rounds per sampled sequence
  int samples = 200;
  double target = 0.0;
  std::uint64_t seed = 1;
  bool stop_at_target = false;  // stop sampling sequences once target is met
};

// Samples conditioning sequences (vertices uniform, values drawn from the
// current marginals), measures the global correlation after every prefix,
// and returns the conditioned distribution with the smallest correlation
// seen, together with the full transcript.
std::pair<std::unique_ptr<PseudoDistribution>, ConditioningTranscript> conditioning_loop(
    const PseudoDistribution& pd, const ConditioningOptions& opt);

}  // namespace tcol
