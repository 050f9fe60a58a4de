#include "tcol/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "tcol/errors.hpp"

namespace tcol {

RelaxationProblem build_coloring_relaxation(const Graph& g, double delta) {
  if (delta < 0.0 || delta > 1.0) throw PreconditionError("delta must lie in [0,1]");
  RelaxationProblem p;
  p.kind = RelaxationKind::coloring;
  p.graph = g;
  p.delta = delta;
  return p;
}

RelaxationProblem build_is_relaxation(const Graph& g, double delta) {
  if (delta < 0.0 || delta >= 0.5) throw PreconditionError("delta must lie in [0, 1/2)");
  RelaxationProblem p;
  p.kind = RelaxationKind::independent_set;
  p.graph = g;
  p.delta = delta;
  return p;
}

SymmetricMatrix moment_matrix_of(const PseudoDistribution& pd) {
  int n = pd.num_vars(), q = pd.alphabet_size();
  SymmetricMatrix m(1 + n * q);
  m.set(0, 0, 1.0);
  for (int u = 0; u < n; ++u) {
    auto p = pd.marginal(u);
    for (int s = 0; s < q; ++s) {
      m.set(0, 1 + u * q + s, p[s]);
      m.set(1 + u * q + s, 1 + u * q + s, p[s]);
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      auto j = pd.pairwise(u, v);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          m.set(1 + u * q + a, 1 + v * q + b, j[static_cast<std::size_t>(a) * q + b]);
    }
  return m;
}

namespace {

// ---- small dense helpers -------------------------------------------------

// In-place lower Cholesky, row-major. Throws if not positive definite.
void cholesky(std::vector<double>& a, int m) {
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[static_cast<std::size_t>(i) * m + j];
      for (int k = 0; k < j; ++k)
        s -= a[static_cast<std::size_t>(i) * m + k] * a[static_cast<std::size_t>(j) * m + k];
      if (i == j) {
        if (s <= 0.0) throw SolverError("cholesky: matrix not positive definite");
        a[static_cast<std::size_t>(i) * m + i] = std::sqrt(s);
      } else {
        a[static_cast<std::size_t>(i) * m + j] = s / a[static_cast<std::size_t>(j) * m + j];
      }
    }
    for (int j = i + 1; j < m; ++j) a[static_cast<std::size_t>(i) * m + j] = 0.0;
  }
}

void chol_solve(const std::vector<double>& l, int m, std::vector<double>& x) {
  for (int i = 0; i < m; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= l[static_cast<std::size_t>(i) * m + k] * x[k];
    x[i] = s / l[static_cast<std::size_t>(i) * m + i];
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < m; ++k) s -= l[static_cast<std::size_t>(k) * m + i] * x[k];
    x[i] = s / l[static_cast<std::size_t>(i) * m + i];
  }
}

// ---- packed symmetric coordinates ---------------------------------------

std::size_t packed_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

}  // namespace

// Operator-splitting solver. One free-variable copy per constraint class:
// x lives on the affine set (all equality constraints hold exactly), z_psd
// on the PSD cone, z_box in the [0,1] box; scaled duals u_* tie them
// together. The affine projection eliminates the pairwise blocks in closed
// form and solves a cached KKT system over the marginals.
struct AdmmSolver {
  const RelaxationProblem& prob;
  SolverConfig cfg;
  std::vector<Pin> pins;

  int n, q, twoq, order;
  std::size_t psize;   // packed matrix entries
  std::size_t vsize;   // psize + 1 slack slot (slack unused when !has_slack)
  bool has_slack = false;
  double slack_ub = 0.0;

  std::vector<char> fixed;      // per packed entry
  std::vector<double> fixval;
  std::vector<double> wmetric;  // 1 on the diagonal, 2 off it, 1 for slack

  // marginal bookkeeping: state 0 free, 1 fixed
  std::vector<char> m_fixed;       // n*q
  std::vector<double> m_value;     // n*q, valid when fixed
  std::vector<int> m_index;        // n*q -> free-variable index or -1
  int ny = 0;                      // free marginals + optional slack
  int slack_y = -1;

  struct Pattern {
    std::vector<double> k;                        // 2q x 2q pseudo-inverse of R R^T
    std::vector<std::vector<double>> null_rows;   // left-null basis of R
    std::vector<int> free_cells;                  // symbol codes a*q+b
  };
  std::map<std::uint32_t, Pattern> patterns;

  struct PairRef {
    int u, v;
    const Pattern* pat;
    std::vector<int> link;          // 2q: free m index or -1
    std::vector<double> fconst;     // 2q
    std::vector<std::size_t> cell;  // packed index per free cell
  };
  std::vector<PairRef> pairs;

  // KKT cache
  std::vector<double> pchol;     // ny x ny cholesky of P
  std::vector<double> cmat;      // nc x ny
  std::vector<double> crhs;      // nc
  std::vector<double> mc_chol;   // nc x nc
  std::vector<double> pict;      // ny x nc  (P^{-1} C^T)
  int nc = 0;

  // per-iteration buffers
  std::vector<double> bvec, yvec, nu, work2q, hbuf, khbuf;

  explicit AdmmSolver(const RelaxationProblem& p, std::vector<Pin> pin_list,
                      const SolverConfig& config)
      : prob(p), cfg(config), pins(std::move(pin_list)) {
    n = prob.graph.n;
    q = prob.alphabet_size();
    twoq = 2 * q;
    order = prob.moment_order();
    psize = SymmetricMatrix::packed_size(order);
    has_slack = prob.has_budget_row();
    vsize = psize + 1;
    slack_ub = static_cast<double>(n);
    build();
  }

  std::size_t pk(int i, int j) const { return packed_index(order, i, j); }
  int row_of(int u, int s) const { return 1 + u * q + s; }

  void fix_entry(std::size_t e, double v) {
    if (fixed[e] && std::fabs(fixval[e] - v) > 1e-12)
      throw InfeasibleError("contradictory fixed moment entries");
    fixed[e] = 1;
    fixval[e] = v;
  }

  void fix_marginal(int u, int s, double v, std::vector<std::pair<int, int>>& queue) {
    int idx = u * q + s;
    if (m_fixed[idx]) {
      if (std::fabs(m_value[idx] - v) > 1e-12)
        throw InfeasibleError("pins force vertex " + std::to_string(u) +
                              " to two different values for symbol " + std::to_string(s));
      return;
    }
    m_fixed[idx] = 1;
    m_value[idx] = v;
    queue.emplace_back(u, s);
  }

  void build() {
    validate_pins();

    fixed.assign(vsize, 0);
    fixval.assign(vsize, 0.0);
    m_fixed.assign(static_cast<std::size_t>(n) * q, 0);
    m_value.assign(static_cast<std::size_t>(n) * q, 0.0);

    fix_entry(pk(0, 0), 1.0);
    // within-vertex exclusivity
    for (int u = 0; u < n; ++u)
      for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b) fix_entry(pk(row_of(u, a), row_of(u, b)), 0.0);
    // edge constraints on the diagonal symbols
    const auto constrained = prob.constrained_symbols();
    for (const auto& [u, v] : prob.graph.edges)
      for (int s : constrained) fix_entry(pk(row_of(u, s), row_of(v, s)), 0.0);

    // pin propagation to a fixpoint: a pinned symbol fixes the vertex's
    // whole marginal; a zero marginal kills its pairwise rows; a pinned
    // constrained symbol excludes that symbol on every neighbor.
    std::vector<std::pair<int, int>> queue;
    for (const Pin& p : pins) {
      fix_marginal(p.vertex, p.symbol, 1.0, queue);
      for (int s = 0; s < q; ++s)
        if (s != p.symbol) fix_marginal(p.vertex, s, 0.0, queue);
    }
    std::vector<char> is_constrained(q, 0);
    for (int s : constrained) is_constrained[s] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [u, s] = queue[head];
      double val = m_value[u * q + s];
      fix_entry(pk(0, row_of(u, s)), val);
      fix_entry(pk(row_of(u, s), row_of(u, s)), val);
      if (val == 0.0) {
        for (int w = 0; w < n; ++w) {
          if (w == u) continue;
          for (int t = 0; t < q; ++t) fix_entry(pk(row_of(u, s), row_of(w, t)), 0.0);
        }
      } else if (val == 1.0 && is_constrained[s]) {
        for (int w : prob.graph.adjacency[u]) fix_marginal(w, s, 0.0, queue);
      }
    }
    for (int u = 0; u < n; ++u) {
      double fixed_mass = 0.0;
      bool any_free = false;
      for (int s = 0; s < q; ++s) {
        if (m_fixed[u * q + s])
          fixed_mass += m_value[u * q + s];
        else
          any_free = true;
      }
      if (!any_free && std::fabs(fixed_mass - 1.0) > 1e-9)
        throw InfeasibleError("pins leave vertex " + std::to_string(u) + " with total mass " +
                              std::to_string(fixed_mass));
    }

    // free-variable indexing
    m_index.assign(static_cast<std::size_t>(n) * q, -1);
    ny = 0;
    for (int i = 0; i < n * q; ++i)
      if (!m_fixed[i]) m_index[i] = ny++;
    if (has_slack) slack_y = ny++;

    wmetric.assign(vsize, 2.0);
    for (int i = 0; i < order; ++i) wmetric[pk(i, i)] = 1.0;
    wmetric[psize] = 1.0;  // slack

    build_pairs();
    build_kkt();

    bvec.assign(ny, 0.0);
    yvec.assign(ny, 0.0);
    work2q.assign(twoq, 0.0);
    hbuf.assign(twoq, 0.0);
    khbuf.assign(twoq, 0.0);
  }

  void validate_pins() {
    std::map<int, int> by_vertex;
    const auto constrained = prob.constrained_symbols();
    for (const Pin& p : pins) {
      if (p.vertex < 0 || p.vertex >= n || p.symbol < 0 || p.symbol >= q)
        throw PreconditionError("pin out of range");
      auto [it, inserted] = by_vertex.emplace(p.vertex, p.symbol);
      if (!inserted && it->second != p.symbol)
        throw InfeasibleError("vertex " + std::to_string(p.vertex) +
                              " pinned to two different symbols");
    }
    for (const Pin& a : pins)
      for (const Pin& b : pins)
        if (a.vertex < b.vertex && a.symbol == b.symbol &&
            std::find(constrained.begin(), constrained.end(), a.symbol) != constrained.end() &&
            prob.graph.has_edge(a.vertex, b.vertex))
          throw InfeasibleError("adjacent vertices " + std::to_string(a.vertex) + " and " +
                                std::to_string(b.vertex) + " pinned to the same symbol " +
                                std::to_string(a.symbol));
  }

  const Pattern& pattern_for(std::uint32_t mask) {
    auto it = patterns.find(mask);
    if (it != patterns.end()) return it->second;

    Pattern pat;
    for (int code = 0; code < q * q; ++code)
      if (mask & (1u << code)) pat.free_cells.push_back(code);

    // R R^T for the row/column-sum operator restricted to the free cells.
    SymmetricMatrix rrt(twoq);
    for (int code : pat.free_cells) {
      int a = code / q, b = code % q;
      rrt.add(a, a, 1.0);
      rrt.add(q + b, q + b, 1.0);
      rrt.add(a, q + b, 1.0);
    }
    EigenDecomposition eig = symmetric_eigen(rrt, true);
    double top = eig.values.empty() ? 0.0 : std::max(eig.values[0], 1.0);
    pat.k.assign(static_cast<std::size_t>(twoq) * twoq, 0.0);
    for (int t = 0; t < twoq; ++t) {
      if (eig.values[t] > 1e-9 * top) {
        double inv = 1.0 / eig.values[t];
        for (int i = 0; i < twoq; ++i)
          for (int j = 0; j < twoq; ++j)
            pat.k[static_cast<std::size_t>(i) * twoq + j] += inv * eig.vec(i, t) * eig.vec(j, t);
      } else {
        std::vector<double> nullrow(twoq);
        for (int i = 0; i < twoq; ++i) nullrow[i] = eig.vec(i, t);
        pat.null_rows.push_back(std::move(nullrow));
      }
    }
    return patterns.emplace(mask, std::move(pat)).first->second;
  }

  void build_pairs() {
    pairs.clear();
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        std::uint32_t mask = 0;
        for (int a = 0; a < q; ++a)
          for (int b = 0; b < q; ++b)
            if (!fixed[pk(row_of(u, a), row_of(v, b))]) mask |= 1u << (a * q + b);

        PairRef ref;
        ref.u = u;
        ref.v = v;
        ref.pat = &pattern_for(mask);
        ref.link.assign(twoq, -1);
        ref.fconst.assign(twoq, 0.0);
        for (int r = 0; r < twoq; ++r) {
          int vert = r < q ? u : v;
          int sym = r < q ? r : r - q;
          double fixed_cells = 0.0;
          for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
              if (r < q ? (a != sym) : (b != sym)) continue;
              std::size_t e = pk(row_of(u, a), row_of(v, b));
              if (fixed[e]) fixed_cells += fixval[e];
            }
          if (m_fixed[vert * q + sym])
            ref.fconst[r] = m_value[vert * q + sym] - fixed_cells;
          else {
            ref.link[r] = m_index[vert * q + sym];
            ref.fconst[r] = -fixed_cells;
          }
        }
        for (int code : ref.pat->free_cells)
          ref.cell.push_back(pk(row_of(u, code / q), row_of(v, code % q)));
        pairs.push_back(std::move(ref));
      }
  }

  void build_kkt() {
    // quadratic form P = diag(base weights) + sum over pairs of 2 E^T K E
    std::vector<double> pmat(static_cast<std::size_t>(ny) * ny, 0.0);
    for (int i = 0; i < ny; ++i) pmat[static_cast<std::size_t>(i) * ny + i] = 3.0;
    if (slack_y >= 0) pmat[static_cast<std::size_t>(slack_y) * ny + slack_y] = 1.0;
    for (const PairRef& pr : pairs) {
      const auto& k = pr.pat->k;
      for (int r1 = 0; r1 < twoq; ++r1) {
        if (pr.link[r1] < 0) continue;
        for (int r2 = 0; r2 < twoq; ++r2) {
          if (pr.link[r2] < 0) continue;
          pmat[static_cast<std::size_t>(pr.link[r1]) * ny + pr.link[r2]] +=
              2.0 * k[static_cast<std::size_t>(r1) * twoq + r2];
        }
      }
    }

    // candidate equality rows on the free variables
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int u = 0; u < n; ++u) {
      std::vector<double> row(ny, 0.0);
      double r = 1.0;
      bool any = false;
      for (int s = 0; s < q; ++s) {
        if (m_fixed[u * q + s])
          r -= m_value[u * q + s];
        else {
          row[m_index[u * q + s]] = 1.0;
          any = true;
        }
      }
      if (!any) continue;  // fully pinned vertex, mass already checked
      rows.push_back(std::move(row));
      rhs.push_back(r);
    }
    if (has_slack) {
      std::vector<double> row(ny, 0.0);
      double r;
      if (prob.kind == RelaxationKind::coloring) {
        r = prob.delta * n;  // sum of uncolored mass + slack = delta n
        for (int u = 0; u < n; ++u) {
          if (m_fixed[u * q + 0])
            r -= m_value[u * q + 0];
          else
            row[m_index[u * q + 0]] = 1.0;
        }
        row[slack_y] = 1.0;
      } else {
        r = (0.5 - prob.delta) * n;  // sum of in-set mass - slack = floor
        for (int u = 0; u < n; ++u) {
          if (m_fixed[u * q + 1])
            r -= m_value[u * q + 1];
          else
            row[m_index[u * q + 1]] = 1.0;
        }
        row[slack_y] = -1.0;
      }
      rows.push_back(std::move(row));
      rhs.push_back(r);
    }
    for (const PairRef& pr : pairs) {
      for (const auto& nullrow : pr.pat->null_rows) {
        std::vector<double> row(ny, 0.0);
        double r = 0.0;
        for (int t = 0; t < twoq; ++t) {
          if (std::fabs(nullrow[t]) < 1e-14) continue;
          if (pr.link[t] >= 0) row[pr.link[t]] += nullrow[t];
          r -= nullrow[t] * pr.fconst[t];
        }
        rows.push_back(std::move(row));
        rhs.push_back(r);
      }
    }

    // rank filter (modified Gram-Schmidt); dependent rows must be consistent
    std::vector<std::vector<double>> basis;
    std::vector<double> basis_rhs;
    std::vector<std::vector<double>> kept;
    std::vector<double> kept_rhs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<double> r = rows[i];
      double rr = rhs[i];
      for (std::size_t b = 0; b < basis.size(); ++b) {
        double dot = 0.0;
        for (int j = 0; j < ny; ++j) dot += r[j] * basis[b][j];
        for (int j = 0; j < ny; ++j) r[j] -= dot * basis[b][j];
        rr -= dot * basis_rhs[b];
      }
      double nrm = 0.0;
      for (int j = 0; j < ny; ++j) nrm += r[j] * r[j];
      nrm = std::sqrt(nrm);
      if (nrm < 1e-9) {
        if (std::fabs(rr) > 1e-7)
          throw InfeasibleError("inconsistent equality constraints (residual " +
                                std::to_string(rr) + "); the pin pattern is infeasible");
        continue;
      }
      for (int j = 0; j < ny; ++j) r[j] /= nrm;
      rr /= nrm;
      basis.push_back(r);
      basis_rhs.push_back(rr);
      kept.push_back(rows[i]);
      kept_rhs.push_back(rhs[i]);
    }

    nc = static_cast<int>(kept.size());
    cmat.assign(static_cast<std::size_t>(nc) * ny, 0.0);
    crhs = kept_rhs;
    for (int c = 0; c < nc; ++c)
      for (int j = 0; j < ny; ++j) cmat[static_cast<std::size_t>(c) * ny + j] = kept[c][j];

    pchol = pmat;
    cholesky(pchol, ny);

    // pict = P^{-1} C^T, mc = C P^{-1} C^T
    pict.assign(static_cast<std::size_t>(ny) * nc, 0.0);
    std::vector<double> col(ny);
    std::vector<double> mc(static_cast<std::size_t>(nc) * nc, 0.0);
    for (int c = 0; c < nc; ++c) {
      for (int j = 0; j < ny; ++j) col[j] = cmat[static_cast<std::size_t>(c) * ny + j];
      chol_solve(pchol, ny, col);
      for (int j = 0; j < ny; ++j) pict[static_cast<std::size_t>(j) * nc + c] = col[j];
      for (int c2 = 0; c2 < nc; ++c2) {
        double dot = 0.0;
        for (int j = 0; j < ny; ++j) dot += cmat[static_cast<std::size_t>(c2) * ny + j] * col[j];
        mc[static_cast<std::size_t>(c2) * nc + c] = dot;
      }
    }
    mc_chol = mc;
    if (nc > 0) cholesky(mc_chol, nc);
    nu.assign(nc, 0.0);
  }

  // Projection of `target` (packed entries + slack) onto the affine set in
  // the W metric. Writes the result into `out`.
  void project_affine(const std::vector<double>& target, std::vector<double>& out) {
    std::fill(bvec.begin(), bvec.end(), 0.0);
    for (int u = 0; u < n; ++u)
      for (int s = 0; s < q; ++s) {
        int i = m_index[u * q + s];
        if (i < 0) continue;
        bvec[i] = 2.0 * target[pk(0, row_of(u, s))] + target[pk(row_of(u, s), row_of(u, s))];
      }
    if (slack_y >= 0) bvec[slack_y] = target[psize];

    for (const PairRef& pr : pairs) {
      const auto& cells = pr.pat->free_cells;
      std::fill(work2q.begin(), work2q.end(), 0.0);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        double yv = target[pr.cell[i]];
        work2q[cells[i] / q] += yv;
        work2q[q + cells[i] % q] += yv;
      }
      // b += 2 E^T K (R y_B - fconst)
      const auto& k = pr.pat->k;
      for (int r = 0; r < twoq; ++r) {
        if (pr.link[r] < 0) continue;
        double acc = 0.0;
        for (int t = 0; t < twoq; ++t)
          acc += k[static_cast<std::size_t>(r) * twoq + t] * (work2q[t] - pr.fconst[t]);
        bvec[pr.link[r]] += 2.0 * acc;
      }
    }

    yvec = bvec;
    chol_solve(pchol, ny, yvec);
    if (nc > 0) {
      for (int c = 0; c < nc; ++c) {
        double dot = -crhs[c];
        for (int j = 0; j < ny; ++j) dot += cmat[static_cast<std::size_t>(c) * ny + j] * yvec[j];
        nu[c] = dot;
      }
      chol_solve(mc_chol, nc, nu);
      for (int j = 0; j < ny; ++j) {
        double adj = 0.0;
        for (int c = 0; c < nc; ++c) adj += pict[static_cast<std::size_t>(j) * nc + c] * nu[c];
        yvec[j] -= adj;
      }
    }

    // assemble the projected point
    for (std::size_t e = 0; e < vsize; ++e) out[e] = fixed[e] ? fixval[e] : 0.0;
    for (int u = 0; u < n; ++u)
      for (int s = 0; s < q; ++s) {
        int i = m_index[u * q + s];
        if (i < 0) continue;
        out[pk(0, row_of(u, s))] = yvec[i];
        out[pk(row_of(u, s), row_of(u, s))] = yvec[i];
      }
    out[psize] = slack_y >= 0 ? yvec[slack_y] : 0.0;

    for (const PairRef& pr : pairs) {
      const auto& cells = pr.pat->free_cells;
      std::fill(work2q.begin(), work2q.end(), 0.0);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        double yv = target[pr.cell[i]];
        work2q[cells[i] / q] += yv;
        work2q[q + cells[i] % q] += yv;
      }
      // h = E y + fconst - R y_B ; cells get y_B + (K h)_row + (K h)_col
      const auto& k = pr.pat->k;
      for (int r = 0; r < twoq; ++r)
        hbuf[r] = (pr.link[r] >= 0 ? yvec[pr.link[r]] : 0.0) + pr.fconst[r] - work2q[r];
      for (int r = 0; r < twoq; ++r) {
        double acc = 0.0;
        for (int t = 0; t < twoq; ++t) acc += k[static_cast<std::size_t>(r) * twoq + t] * hbuf[t];
        khbuf[r] = acc;
      }
      for (std::size_t i = 0; i < cells.size(); ++i)
        out[pr.cell[i]] = target[pr.cell[i]] + khbuf[cells[i] / q] + khbuf[q + cells[i] % q];
    }
  }

  double wnorm(const std::vector<double>& a) const {
    double s = 0.0;
    for (std::size_t e = 0; e < vsize; ++e) s += wmetric[e] * a[e] * a[e];
    return std::sqrt(s);
  }

  SymmetricMatrix unpack(const std::vector<double>& x) const {
    SymmetricMatrix m(order);
    for (int i = 0; i < order; ++i)
      for (int j = i; j < order; ++j) m.set(i, j, x[packed_index(order, i, j)]);
    return m;
  }

  SolveResult run() {
    std::vector<double> x(vsize, 0.0), z1(vsize, 0.0), z2(vsize, 0.0);
    std::vector<double> u1(vsize, 0.0), u2(vsize, 0.0);
    std::vector<double> target(vsize, 0.0), prev(vsize, 0.0), diff(vsize, 0.0);

    double rho = cfg.rho;
    if (cfg.warm_start && !cfg.warm_start->z_psd.empty() &&
        cfg.warm_start->z_psd.size() == psize) {
      const WarmStart& w = *cfg.warm_start;
      std::copy(w.z_psd.begin(), w.z_psd.end(), z1.begin());
      std::copy(w.z_box.begin(), w.z_box.end(), z2.begin());
      std::copy(w.u_psd.begin(), w.u_psd.end(), u1.begin());
      std::copy(w.u_box.begin(), w.u_box.end(), u2.begin());
      z1[psize] = w.slack_z_psd;
      z2[psize] = w.slack_z_box;
      u1[psize] = w.slack_u_psd;
      u2[psize] = w.slack_u_box;
      if (w.rho > 0.0) rho = w.rho;
    } else {
      // interior-ish start: uniform marginals and product pairs
      for (std::size_t e = 0; e < vsize; ++e) target[e] = fixed[e] ? fixval[e] : 0.0;
      double inv_q = 1.0 / q, inv_q2 = inv_q * inv_q;
      for (int u = 0; u < n; ++u)
        for (int s = 0; s < q; ++s) {
          if (m_fixed[u * q + s]) continue;
          target[pk(0, row_of(u, s))] = inv_q;
          target[pk(row_of(u, s), row_of(u, s))] = inv_q;
        }
      for (const PairRef& pr : pairs)
        for (std::size_t i = 0; i < pr.cell.size(); ++i) target[pr.cell[i]] = inv_q2;
      target[psize] = 0.0;
      project_affine(target, z1);
      z2 = z1;
    }

    // objective gradient lands on the uncolored-mass entries
    std::vector<std::size_t> obj_entries;
    if (prob.kind == RelaxationKind::coloring)
      for (int u = 0; u < n; ++u)
        if (!m_fixed[u * q + 0]) obj_entries.push_back(pk(0, row_of(u, 0)));

    SolveStats stats;
    double u_norm_start = -1.0;
    int primal_floor_hits = 0;
    int it = 0;
    double r_prim = 0.0, r_dual = 0.0;
    const double alpha = cfg.over_relaxation;

    for (it = 1; it <= cfg.max_iterations; ++it) {
      // x-step
      for (std::size_t e = 0; e < vsize; ++e)
        target[e] = 0.5 * ((z1[e] - u1[e]) + (z2[e] - u2[e]));
      for (std::size_t e : obj_entries) target[e] -= 1.0 / (2.0 * rho * wmetric[e]);
      project_affine(target, x);

      // z-steps with over-relaxation
      prev = z1;
      for (std::size_t e = 0; e < vsize; ++e)
        diff[e] = alpha * x[e] + (1.0 - alpha) * z1[e] + u1[e];
      {
        SymmetricMatrix m(order);
        for (int i = 0; i < order; ++i)
          for (int j = i; j < order; ++j) m.set(i, j, diff[packed_index(order, i, j)]);
        project_psd(m);
        for (int i = 0; i < order; ++i)
          for (int j = i; j < order; ++j) z1[packed_index(order, i, j)] = m(i, j);
        z1[psize] = diff[psize];
      }
      for (std::size_t e = 0; e < vsize; ++e)
        u1[e] += alpha * x[e] + (1.0 - alpha) * prev[e] - z1[e];
      double dz1 = 0.0;
      for (std::size_t e = 0; e < vsize; ++e) {
        double d = z1[e] - prev[e];
        dz1 += wmetric[e] * d * d;
      }

      prev = z2;
      for (std::size_t e = 0; e < vsize; ++e)
        diff[e] = alpha * x[e] + (1.0 - alpha) * z2[e] + u2[e];
      for (std::size_t e = 0; e < psize; ++e) z2[e] = std::clamp(diff[e], 0.0, 1.0);
      z2[psize] = std::clamp(diff[psize], 0.0, slack_ub);
      for (std::size_t e = 0; e < vsize; ++e)
        u2[e] += alpha * x[e] + (1.0 - alpha) * prev[e] - z2[e];
      double dz2 = 0.0;
      for (std::size_t e = 0; e < vsize; ++e) {
        double d = z2[e] - prev[e];
        dz2 += wmetric[e] * d * d;
      }

      // residuals
      double p1 = 0.0, p2 = 0.0;
      for (std::size_t e = 0; e < vsize; ++e) {
        double d1 = x[e] - z1[e], d2 = x[e] - z2[e];
        p1 += wmetric[e] * d1 * d1;
        p2 += wmetric[e] * d2 * d2;
      }
      r_prim = std::sqrt(std::max(p1, p2));
      r_dual = rho * std::sqrt(std::max(dz1, dz2));

      if (r_prim <= cfg.tolerance && r_dual <= cfg.tolerance) {
        stats.status = SolveStatus::converged;
        break;
      }

      if (it % cfg.balance_period == 0) {
        // heuristic infeasibility: stalled primal residual with growing duals
        double unorm = 0.0;
        for (std::size_t e = 0; e < vsize; ++e)
          unorm += wmetric[e] * (u1[e] * u1[e] + u2[e] * u2[e]);
        unorm = rho * std::sqrt(unorm);
        if (u_norm_start < 0.0) u_norm_start = std::max(unorm, 1e-12);
        stats.dual_growth = unorm / u_norm_start;
        if (r_prim > 1e-4)
          ++primal_floor_hits;
        else
          primal_floor_hits = 0;
        if (it >= 4000 && primal_floor_hits >= 20 && stats.dual_growth > 8.0) {
          stats.status = SolveStatus::infeasible_evidence;
          break;
        }
        if (r_prim > 10.0 * r_dual) {
          rho *= 2.0;
          for (std::size_t e = 0; e < vsize; ++e) {
            u1[e] *= 0.5;
            u2[e] *= 0.5;
          }
        } else if (r_dual > 10.0 * r_prim) {
          rho *= 0.5;
          for (std::size_t e = 0; e < vsize; ++e) {
            u1[e] *= 2.0;
            u2[e] *= 2.0;
          }
        }
      }
    }

    stats.iterations = std::min(it, cfg.max_iterations);
    stats.primal_residual = r_prim;
    stats.dual_residual = r_dual;

    SymmetricMatrix xm = unpack(x);
    stats.min_eigenvalue = symmetric_eigenvalues(xm).back();
    if (prob.kind == RelaxationKind::coloring) {
      double obj = 0.0;
      for (int u = 0; u < n; ++u) obj += xm(0, row_of(u, 0));
      stats.objective = obj;
    }

    SolveResult res;
    res.stats = stats;
    if (stats.status == SolveStatus::converged) {
      auto dist = std::unique_ptr<SdpDistribution>(new SdpDistribution());
      dist->problem_ = std::make_shared<RelaxationProblem>(prob);
      dist->pins_ = pins;
      dist->config_ = cfg;
      dist->config_.warm_start.reset();
      dist->moment_ = std::move(xm);
      dist->stats_ = stats;
      auto warm = std::make_shared<WarmStart>();
      warm->z_psd.assign(z1.begin(), z1.begin() + psize);
      warm->z_box.assign(z2.begin(), z2.begin() + psize);
      warm->u_psd.assign(u1.begin(), u1.begin() + psize);
      warm->u_box.assign(u2.begin(), u2.begin() + psize);
      warm->slack_z_psd = z1[psize];
      warm->slack_z_box = z2[psize];
      warm->slack_u_psd = u1[psize];
      warm->slack_u_box = u2[psize];
      warm->rho = rho;
      dist->warm_ = std::move(warm);
      res.distribution = std::move(dist);
    }
    return res;
  }
};

SolveResult solve(const RelaxationProblem& p, const SolverConfig& cfg) {
  AdmmSolver solver(p, {}, cfg);
  return solver.run();
}

SolveResult pin_and_resolve(const RelaxationProblem& p, const std::vector<Pin>& pins,
                            const SolverConfig& cfg) {
  AdmmSolver solver(p, pins, cfg);
  return solver.run();
}

std::vector<double> SdpDistribution::marginal(int u) const {
  int q = alphabet_size();
  std::vector<double> p(q);
  for (int s = 0; s < q; ++s) p[s] = std::clamp(moment_(0, 1 + u * q + s), 0.0, 1.0);
  return p;
}

std::vector<double> SdpDistribution::pairwise(int u, int v) const {
  int q = alphabet_size();
  std::vector<double> j(static_cast<std::size_t>(q) * q, 0.0);
  if (u == v) {
    auto p = marginal(u);
    for (int s = 0; s < q; ++s) j[static_cast<std::size_t>(s) * q + s] = p[s];
    return j;
  }
  double sum = 0.0;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      double val = std::max(moment_(1 + u * q + a, 1 + v * q + b), 0.0);
      j[static_cast<std::size_t>(a) * q + b] = val;
      sum += val;
    }
  if (sum > 0.5) {
    double inv = 1.0 / sum;
    for (double& x : j) x *= inv;
  }
  return j;
}

std::unique_ptr<PseudoDistribution> SdpDistribution::condition(int vertex, int symbol) const {
  auto p = marginal(vertex);
  if (p[symbol] <= 1e-9)
    throw ZeroProbabilityError("condition: vertex " + std::to_string(vertex) + " has mass " +
                               std::to_string(p[symbol]) + " on symbol " +
                               std::to_string(symbol));
  std::vector<Pin> pins = pins_;
  pins.push_back({vertex, symbol});
  SolverConfig cfg = config_;
  cfg.warm_start = warm_;
  SolveResult res = pin_and_resolve(*problem_, pins, cfg);
  if (!res.distribution) {
    if (res.stats.status == SolveStatus::infeasible_evidence)
      throw InfeasibleError("conditioning made the relaxation infeasible");
    throw SolverError("conditioning solve did not converge (primal " +
                      std::to_string(res.stats.primal_residual) + ", dual " +
                      std::to_string(res.stats.dual_residual) + ")");
  }
  return std::move(res.distribution);
}

std::unique_ptr<PseudoDistribution> SdpDistribution::clone() const {
  return std::unique_ptr<PseudoDistribution>(new SdpDistribution(*this));
}

}  // namespace tcol
