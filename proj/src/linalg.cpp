#include "tcol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tcol/errors.hpp"

namespace tcol {

std::vector<double> SymmetricMatrix::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      double v = (*this)(i, j);
      d[static_cast<std::size_t>(i) * n_ + j] = v;
      d[static_cast<std::size_t>(j) * n_ + i] = v;
    }
  return d;
}

namespace {

inline double hypot2(double a, double b) {
  double absa = std::fabs(a), absb = std::fabs(b);
  if (absa > absb) {
    double r = absb / absa;
    return absa * std::sqrt(1.0 + r * r);
  }
  if (absb == 0.0) return 0.0;
  double r = absa / absb;
  return absb * std::sqrt(1.0 + r * r);
}

// Householder reduction of the symmetric matrix in a (row-major, n*n) to
// tridiagonal form; on output a holds the accumulated orthogonal transform
// when want_vectors, d the diagonal and e the subdiagonal (e[0] = 0).
void householder_tridiag(std::vector<double>& a, int n, std::vector<double>& d,
                         std::vector<double>& e, bool want_vectors) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  for (int i = n - 1; i >= 1; --i) {
    int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(at(i, k));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          if (want_vectors) at(j, i) = at(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = at(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }
  if (want_vectors) d[0] = 0.0;
  e[0] = 0.0;

  for (int i = 0; i < n; ++i) {
    if (want_vectors) {
      int l = i - 1;
      if (d[i] != 0.0) {
        for (int j = 0; j <= l; ++j) {
          double g = 0.0;
          for (int k = 0; k <= l; ++k) g += at(i, k) * at(k, j);
          for (int k = 0; k <= l; ++k) at(k, j) -= g * at(k, i);
        }
      }
      d[i] = at(i, i);
      at(i, i) = 1.0;
      for (int j = 0; j <= l; ++j) at(j, i) = at(i, j) = 0.0;
    } else {
      d[i] = at(i, i);
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e); accumulates rotations into the
// columns of a when want_vectors.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& a, int n,
                bool want_vectors) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-300 || std::fabs(e[m]) + dd == dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw EigenError("QL iteration cap exceeded at row " + std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          e[i + 1] = r = hypot2(f, g);
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
          if (want_vectors) {
            for (int k = 0; k < n; ++k) {
              f = at(k, i + 1);
              at(k, i + 1) = s * at(k, i) + c * f;
              at(k, i) = c * at(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

EigenDecomposition symmetric_eigen(const SymmetricMatrix& m, bool want_vectors) {
  int n = m.order();
  EigenDecomposition out;
  out.n = n;
  if (n == 0) return out;

  std::vector<double> a = m.to_dense();
  std::vector<double> d(n, 0.0), e(n, 0.0);
  if (n == 1) {
    out.values = {a[0]};
    out.vectors = want_vectors ? std::vector<double>{1.0} : std::vector<double>{};
    return out;
  }
  householder_tridiag(a, n, d, e, want_vectors);
  tridiag_ql(d, e, a, n, want_vectors);

  // Sort eigenvalues descending, permuting eigenvector columns alongside.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return d[x] > d[y]; });

  out.values.resize(n);
  for (int k = 0; k < n; ++k) out.values[k] = d[idx[k]];
  if (want_vectors) {
    out.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        out.vectors[static_cast<std::size_t>(i) * n + k] =
            a[static_cast<std::size_t>(i) * n + idx[k]];
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m) {
  return symmetric_eigen(m, false).values;
}

double project_psd(SymmetricMatrix& m) {
  int n = m.order();
  if (n == 0) return 0.0;
  EigenDecomposition eig = symmetric_eigen(m, true);
  double min_eig = eig.values.back();
  if (min_eig >= 0.0) return min_eig;

  // Rebuild from the nonnegative part of the spectrum. Eigenvalues are
  // descending, so positives come first.
  int npos = 0;
  while (npos < n && eig.values[npos] > 0.0) ++npos;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < npos; ++k) s += eig.values[k] * eig.vec(i, k) * eig.vec(j, k);
      m.set(i, j, s);
    }
  return min_eig;
}

}  // namespace tcol
