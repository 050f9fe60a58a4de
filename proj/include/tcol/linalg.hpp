#pragma once

#include <cstddef>
#include <vector>

namespace tcol {

// Dense symmetric matrix. Only the upper triangle is stored, so symmetry is
// exact by construction.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int order) : n_(order), data_(packed_size(order), 0.0) {}

  int order() const { return n_; }

  double operator()(int i, int j) const { return data_[pack(i, j)]; }
  void set(int i, int j, double v) { data_[pack(i, j)] = v; }
  void add(int i, int j, double v) { data_[pack(i, j)] += v; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  // Row-major dense copy (n*n).
  std::vector<double> to_dense() const;

  static std::size_t packed_size(int n) {
    return static_cast<std::size_t>(n) * (n + 1) / 2;
  }

 private:
  std::size_t pack(int i, int j) const {
    if (i > j) std::swap(i, j);
    // upper triangle, row-major: row i starts at i*n - i*(i-1)/2
    return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
           (j - i);
  }

  int n_ = 0;
  std::vector<double> data_;
};

// Eigendecomposition result. Eigenvalues sorted descending; eigenvectors,
// when requested, are the columns of an orthonormal matrix stored row-major
// (vectors[i*n + k] = component i of eigenvector k).
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<double> vectors;
  int n = 0;

  double vec(int i, int k) const { return vectors[static_cast<std::size_t>(i) * n + k]; }
};

// Householder tridiagonalization followed by implicit-shift QL. Deterministic
// for fixed input; throws EigenError if a QL sweep fails to converge.
EigenDecomposition symmetric_eigen(const SymmetricMatrix& m, bool want_vectors = true);

// Eigenvalues only (descending).
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m);

// Projects onto the PSD cone in Frobenius norm: clamps negative eigenvalues
// to zero and reconstructs. Returns the minimum eigenvalue seen.
double project_psd(SymmetricMatrix& m);

}  // namespace tcol
