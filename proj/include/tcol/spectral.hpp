#pragma once

#include <vector>

#include "tcol/graph.hpp"
#include "tcol/linalg.hpp"

namespace tcol {

// Spectrum of the uniform random walk matrix A/d: eigenvalues sorted
// descending (all in [-1,1], top value 1 for a regular graph), eigenvectors
// optional.
struct Spectrum {
  std::vector<double> eigenvalues;
  EigenDecomposition decomposition;  // empty when vectors were not requested
  bool has_vectors = false;

  int n() const { return static_cast<int>(eigenvalues.size()); }
};

SymmetricMatrix random_walk_matrix(const Graph& g);

Spectrum random_walk_spectrum(const Graph& g, bool want_vectors = false);

// Number of eigenvalues strictly larger than eps. Floating-point ties within
// 1e-12 of eps count as "not larger".
int threshold_rank(const Spectrum& s, double eps);

struct LocalToGlobalResult {
  double edge_average = 0.0;      // E over directed edges of M_uv
  double bound = 0.0;             // (1-lambda)*sqrt(r * mean of M^2) + lambda
  double mean_square = 0.0;       // E_{i,j in [n]^2} M_ij^2, diagonal included
  bool holds = false;
  bool lambda_in_positive_range = true;  // the inequality is stated for lambda > 0
};

// Checks the local-to-global inequality for a PSD matrix M with tr(M) <= n
// on a graph with at most r random-walk eigenvalues above lambda. Throws if
// M fails the PSD or trace precondition.
LocalToGlobalResult local_to_global_check(const SymmetricMatrix& m, const Graph& g,
                                          double lambda, int r);

}  // namespace tcol
