#include "tcol/spectral.hpp"

#include <cmath>
#include <string>

#include "tcol/errors.hpp"

namespace tcol {

SymmetricMatrix random_walk_matrix(const Graph& g) {
  if (g.n < 1) throw PreconditionError("random_walk_matrix: empty graph");
  if (g.degree == 0)
    throw PreconditionError("random_walk_matrix: degree-zero graph has no random walk");
  SymmetricMatrix a(g.n);
  double inv_d = 1.0 / g.degree;
  for (const auto& [u, v] : g.edges) a.set(u, v, inv_d);
  return a;
}

Spectrum random_walk_spectrum(const Graph& g, bool want_vectors) {
  SymmetricMatrix a = random_walk_matrix(g);
  Spectrum s;
  s.decomposition = symmetric_eigen(a, want_vectors);
  s.eigenvalues = s.decomposition.values;
  s.has_vectors = want_vectors;
  if (!want_vectors) s.decomposition = EigenDecomposition{};
  return s;
}

int threshold_rank(const Spectrum& s, double eps) {
  if (eps <= -1.0 || eps >= 1.0) throw PreconditionError("threshold_rank: eps must lie in (-1,1)");
  int r = 0;
  for (double lam : s.eigenvalues)
    if (lam > eps + 1e-12) ++r;
  return r;
}

LocalToGlobalResult local_to_global_check(const SymmetricMatrix& m, const Graph& g,
                                          double lambda, int r) {
  int n = m.order();
  if (n != g.n) throw PreconditionError("local_to_global_check: matrix order != vertex count");

  std::vector<double> eigs = symmetric_eigenvalues(m);
  double min_eig = eigs.empty() ? 0.0 : eigs.back();
  if (min_eig < -1e-8)
    throw PreconditionError("local_to_global_check: matrix is not PSD, minimum eigenvalue " +
                            std::to_string(min_eig));
  double tr = m.trace();
  if (tr > n * (1.0 + 1e-8))
    throw PreconditionError("local_to_global_check: trace " + std::to_string(tr) +
                            " exceeds n=" + std::to_string(n));

  LocalToGlobalResult res;
  res.lambda_in_positive_range = lambda > 0.0;

  // Edge expectation over directed pairs; M symmetric, so this is the plain
  // average over undirected edges.
  double edge_sum = 0.0;
  for (const auto& [u, v] : g.edges) edge_sum += m(u, v);
  res.edge_average = g.edge_count() > 0 ? edge_sum / g.edge_count() : 0.0;

  // Mean of squared entries over ordered pairs, diagonal included.
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    sq += m(i, i) * m(i, i);
    for (int j = i + 1; j < n; ++j) sq += 2.0 * m(i, j) * m(i, j);
  }
  res.mean_square = sq / (static_cast<double>(n) * n);

  res.bound = (1.0 - lambda) * std::sqrt(r * res.mean_square) + lambda;
  res.holds = res.edge_average <= res.bound + 1e-9;
  return res;
}

}  // namespace tcol
