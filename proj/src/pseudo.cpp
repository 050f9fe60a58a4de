#include "tcol/pseudo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcol/errors.hpp"
#include "tcol/rng.hpp"

namespace tcol {

namespace {

// Neumaier compensated summation.
class Accum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr double kMassFloor = 1e-15;

}  // namespace

ExactDistribution::ExactDistribution(int alphabet_size, std::vector<std::vector<int>> support,
                                     std::vector<double> weights)
    : q_(alphabet_size), support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.empty()) throw PreconditionError("ExactDistribution: empty support");
  n_ = static_cast<int>(support_[0].size());
  for (const auto& a : support_) {
    if (static_cast<int>(a.size()) != n_)
      throw PreconditionError("ExactDistribution: ragged support");
    for (int s : a)
      if (s < 0 || s >= q_) throw PreconditionError("ExactDistribution: symbol out of range");
  }
  if (weights_.empty()) {
    weights_.assign(support_.size(), 1.0 / static_cast<double>(support_.size()));
  } else {
    if (weights_.size() != support_.size())
      throw PreconditionError("ExactDistribution: weight/support size mismatch");
    Accum total;
    for (double w : weights_) {
      if (w < 0.0) throw PreconditionError("ExactDistribution: negative weight");
      total.add(w);
    }
    double t = total.value();
    if (t <= 0.0) throw PreconditionError("ExactDistribution: zero total weight");
    for (double& w : weights_) w /= t;
  }
}

std::vector<double> ExactDistribution::marginal(int u) const {
  std::vector<Accum> acc(q_);
  for (std::size_t i = 0; i < support_.size(); ++i) acc[support_[i][u]].add(weights_[i]);
  std::vector<double> p(q_);
  for (int s = 0; s < q_; ++s) p[s] = acc[s].value();
  return p;
}

std::vector<double> ExactDistribution::pairwise(int u, int v) const {
  std::vector<Accum> acc(static_cast<std::size_t>(q_) * q_);
  for (std::size_t i = 0; i < support_.size(); ++i)
    acc[static_cast<std::size_t>(support_[i][u]) * q_ + support_[i][v]].add(weights_[i]);
  std::vector<double> p(static_cast<std::size_t>(q_) * q_);
  for (std::size_t s = 0; s < p.size(); ++s) p[s] = acc[s].value();
  return p;
}

std::unique_ptr<PseudoDistribution> ExactDistribution::condition(int vertex, int symbol) const {
  if (vertex < 0 || vertex >= n_ || symbol < 0 || symbol >= q_)
    throw PreconditionError("condition: vertex or symbol out of range");
  std::vector<std::vector<int>> sup;
  std::vector<double> w;
  Accum mass;
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (support_[i][vertex] == symbol) {
      sup.push_back(support_[i]);
      w.push_back(weights_[i]);
      mass.add(weights_[i]);
    }
  if (sup.empty() || mass.value() <= 1e-9)
    throw ZeroProbabilityError("condition: vertex " + std::to_string(vertex) + " has mass " +
                               std::to_string(mass.value()) + " on symbol " +
                               std::to_string(symbol));
  return std::make_unique<ExactDistribution>(q_, std::move(sup), std::move(w));
}

std::unique_ptr<PseudoDistribution> ExactDistribution::clone() const {
  return std::make_unique<ExactDistribution>(*this);
}

ExactDistribution exact_coloring_distribution(const Graph& g, double delta, int cap) {
  if (delta < 0.0 || delta > 1.0) throw PreconditionError("delta must lie in [0,1]");
  int budget = static_cast<int>(std::floor(delta * g.n + 1e-9));
  auto support = enumerate_proper_colorings(g, 3, budget, cap);
  if (support.empty())
    throw InfeasibleError("no proper partial 3-coloring with at most " + std::to_string(budget) +
                          " uncolored vertices");
  return ExactDistribution(4, std::move(support));
}

ExactDistribution exact_is_distribution(const Graph& g, double delta, int cap) {
  if (delta < 0.0 || delta >= 0.5) throw PreconditionError("delta must lie in [0, 1/2)");
  int min_size = static_cast<int>(std::ceil((0.5 - delta) * g.n - 1e-9));
  auto support = enumerate_independent_sets(g, min_size, cap);
  if (support.empty())
    throw InfeasibleError("no independent set of size at least " + std::to_string(min_size));
  return ExactDistribution(2, std::move(support));
}

double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > kMassFloor) h -= x * std::log(x);
  return h;
}

namespace {

// MI of a joint, using the joint's own marginals in the denominator so that
// the value is well defined even when the backend's stored marginals carry a
// small residual.
double joint_mutual_information(const std::vector<double>& joint, int q) {
  std::vector<double> pu(q, 0.0), pv(q, 0.0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      double p = joint[static_cast<std::size_t>(a) * q + b];
      if (p < 0.0) p = 0.0;
      pu[a] += p;
      pv[b] += p;
    }
  double mi = 0.0;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      double p = joint[static_cast<std::size_t>(a) * q + b];
      if (p <= kMassFloor) continue;
      double denom = pu[a] * pv[b];
      if (denom <= kMassFloor * kMassFloor) continue;
      mi += p * std::log(p / denom);
    }
  return mi;
}

}  // namespace

double mutual_information(const PseudoDistribution& pd, int u, int v) {
  if (u == v) return entropy(pd.marginal(u));
  int q = pd.alphabet_size();
  double mi = joint_mutual_information(pd.pairwise(u, v), q);
  if (mi < -1e-6)
    throw ToleranceError("mutual information " + std::to_string(mi) + " below -1e-6 for pair (" +
                         std::to_string(u) + "," + std::to_string(v) + ")");
  return std::max(mi, 0.0);
}

double global_correlation(const PseudoDistribution& pd) {
  int n = pd.num_vars();
  Accum acc;
  for (int u = 0; u < n; ++u) acc.add(entropy(pd.marginal(u)));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) acc.add(2.0 * mutual_information(pd, u, v));
  return acc.value() / (static_cast<double>(n) * n);
}

PinskerResult pinsker_gap(const PseudoDistribution& pd, int u, int v) {
  int q = pd.alphabet_size();
  std::vector<double> joint = pd.pairwise(u, v);
  std::vector<double> pu(q, 0.0), pv(q, 0.0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      double p = std::max(joint[static_cast<std::size_t>(a) * q + b], 0.0);
      pu[a] += p;
      pv[b] += p;
    }
  PinskerResult res;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      res.l1_distance +=
          std::fabs(std::max(joint[static_cast<std::size_t>(a) * q + b], 0.0) - pu[a] * pv[b]);
  double mi = u == v ? entropy(pd.marginal(u)) : std::max(joint_mutual_information(joint, q), 0.0);
  res.bound = std::sqrt(2.0 * mi);
  res.holds = res.l1_distance <= res.bound + 1e-9;
  return res;
}

double max_consistency_residual(const PseudoDistribution& pd) {
  int n = pd.num_vars();
  int q = pd.alphabet_size();
  double worst = 0.0;
  std::vector<std::vector<double>> marg(n);
  for (int u = 0; u < n; ++u) {
    marg[u] = pd.marginal(u);
    double sum = 0.0;
    for (double p : marg[u]) {
      worst = std::max(worst, -p);          // negativity
      worst = std::max(worst, p - 1.0);     // above one
      sum += p;
    }
    worst = std::max(worst, std::fabs(sum - 1.0));
  }
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      std::vector<double> juv = pd.pairwise(u, v);
      std::vector<double> jvu = pd.pairwise(v, u);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          double p = juv[static_cast<std::size_t>(a) * q + b];
          worst = std::max(worst, -p);
          worst = std::max(worst,
                           std::fabs(p - jvu[static_cast<std::size_t>(b) * q + a]));  // symmetry
        }
      for (int a = 0; a < q; ++a) {
        double row = 0.0, col = 0.0;
        for (int b = 0; b < q; ++b) {
          row += juv[static_cast<std::size_t>(a) * q + b];
          col += juv[static_cast<std::size_t>(b) * q + a];
        }
        worst = std::max(worst, std::fabs(row - marg[u][a]));
        worst = std::max(worst, std::fabs(col - marg[v][a]));
      }
    }
  return worst;
}

double max_edge_residual(const PseudoDistribution& pd, const Graph& g,
                         const std::vector<int>& constrained_symbols) {
  int q = pd.alphabet_size();
  double worst = 0.0;
  for (const auto& [u, v] : g.edges) {
    std::vector<double> joint = pd.pairwise(u, v);
    for (int s : constrained_symbols)
      worst = std::max(worst, std::fabs(joint[static_cast<std::size_t>(s) * q + s]));
  }
  return worst;
}

namespace {

int sample_symbol(const std::vector<double>& marginal, Rng& rng,
                  const std::vector<char>& excluded) {
  // Sample proportionally to the marginal, ignoring entries at or below the
  // zero-probability threshold and anything already ruled out.
  double total = 0.0;
  for (std::size_t s = 0; s < marginal.size(); ++s)
    if (!excluded[s] && marginal[s] > 1e-9) total += marginal[s];
  if (total <= 0.0) return -1;
  for (int attempt = 0; attempt < 64; ++attempt) {
    double x = rng.next_double() * total;
    double cum = 0.0;
    for (int s = 0; s < static_cast<int>(marginal.size()); ++s) {
      if (excluded[s] || marginal[s] <= 1e-9) continue;
      cum += marginal[s];
      if (x < cum) return s;
    }
  }
  // Fall back to the largest admissible mass (cumulative rounding pathologies).
  int best = -1;
  for (int s = 0; s < static_cast<int>(marginal.size()); ++s)
    if (!excluded[s] && marginal[s] > 1e-9 && (best < 0 || marginal[s] > marginal[best]))
      best = s;
  return best;
}

// Conditions on a value sampled from the current marginal. A value that
// turns out to be unusable (zero mass, or a pin the backend proves
// infeasible) is excluded and resampled; only when every positive-mass
// value fails does the exhaustion error escape.
std::unique_ptr<PseudoDistribution> condition_on_sampled_value(
    const PseudoDistribution& cur, int vertex, Rng& rng, int& chosen_symbol) {
  std::vector<double> marg = cur.marginal(vertex);
  std::vector<char> excluded(marg.size(), 0);
  for (;;) {
    int symbol = sample_symbol(marg, rng, excluded);
    if (symbol < 0)
      throw ZeroProbabilityError("conditioning: every value of vertex " +
                                 std::to_string(vertex) + " fails");
    try {
      auto next = cur.condition(vertex, symbol);
      chosen_symbol = symbol;
      return next;
    } catch (const ZeroProbabilityError&) {
      excluded[symbol] = 1;
    } catch (const InfeasibleError&) {
      excluded[symbol] = 1;
    }
  }
}

}  // namespace

std::pair<std::unique_ptr<PseudoDistribution>, ConditioningTranscript> conditioning_loop(
    const PseudoDistribution& pd, const ConditioningOptions& opt) {
  if (opt.max_prefix < 0 || opt.samples < 1)
    throw PreconditionError("conditioning_loop: max_prefix >= 0 and samples >= 1 required");

  int n = pd.num_vars();
  ConditioningTranscript tr;
  tr.target = opt.target;
  tr.initial_correlation = global_correlation(pd);
  tr.best_correlation = tr.initial_correlation;
  tr.best_sequence = -1;
  tr.best_prefix = 0;
  tr.succeeded = tr.best_correlation <= opt.target;

  Rng rng(opt.seed);
  for (int s = 0; s < opt.samples; ++s) {
    if (opt.stop_at_target && tr.succeeded) break;
    SequenceRecord rec;
    rec.correlation_by_prefix.push_back(tr.initial_correlation);
    std::unique_ptr<PseudoDistribution> cur = pd.clone();
    for (int k = 0; k < opt.max_prefix; ++k) {
      int vertex = rng.next_int(n);
      int symbol = -1;
      cur = condition_on_sampled_value(*cur, vertex, rng, symbol);
      rec.steps.push_back({vertex, symbol});
      double corr = global_correlation(*cur);
      rec.correlation_by_prefix.push_back(corr);
      // prefer strictly smaller correlation; on a tie, the shorter prefix
      bool better = corr < tr.best_correlation - 1e-15 ||
                    (corr < tr.best_correlation + 1e-15 && k + 1 < tr.best_prefix);
      if (better) {
        tr.best_correlation = std::min(corr, tr.best_correlation);
        tr.best_sequence = s;
        tr.best_prefix = k + 1;
      }
      if (opt.stop_at_target && tr.best_correlation <= opt.target) break;
    }
    tr.sequences.push_back(std::move(rec));
    tr.succeeded = tr.best_correlation <= opt.target;
  }
  tr.succeeded = tr.best_correlation <= opt.target;

  std::unique_ptr<PseudoDistribution> best;
  if (tr.best_sequence < 0) {
    best = pd.clone();
  } else {
    best = pd.clone();
    const auto& steps = tr.sequences[tr.best_sequence].steps;
    for (int k = 0; k < tr.best_prefix; ++k) best = best->condition(steps[k].vertex, steps[k].symbol);
  }
  return {std::move(best), std::move(tr)};
}

}  // namespace tcol
