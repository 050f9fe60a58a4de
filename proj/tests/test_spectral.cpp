#include "tcol/spectral.hpp"

#include <cmath>

#include "doctest.h"
#include "tcol/errors.hpp"
#include "tcol/rng.hpp"

using namespace tcol;

namespace {

bool matches_multiset(const std::vector<double>& got, const std::vector<double>& want,
                      double tol) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (std::fabs(got[i] - want[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("known random walk spectra") {
  Graph k3 = complete_multipartite(3, 1);
  CHECK(matches_multiset(random_walk_spectrum(k3).eigenvalues, {1.0, -0.5, -0.5}, 1e-9));

  Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(matches_multiset(random_walk_spectrum(c4).eigenvalues, {1.0, 0.0, 0.0, -1.0}, 1e-9));

  // K_{5,5,5}: {1, 0 x 12, -1/2 x 2}
  Graph k555 = complete_multipartite(3, 5);
  std::vector<double> want{1.0};
  for (int i = 0; i < 12; ++i) want.push_back(0.0);
  want.push_back(-0.5);
  want.push_back(-0.5);
  CHECK(matches_multiset(random_walk_spectrum(k555).eigenvalues, want, 1e-9));
}

TEST_CASE("spectrum invariants on random regular graphs") {
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_regular(16, 4, 2024 + trial);
    Spectrum s = random_walk_spectrum(g, true);
    CHECK(std::fabs(s.eigenvalues.front() - 1.0) <= 1e-8);
    for (double lam : s.eigenvalues) {
      CHECK(lam <= 1.0 + 1e-8);
      CHECK(lam >= -1.0 - 1e-8);
    }
    // reconstruction against A/d in max norm
    SymmetricMatrix a = random_walk_matrix(g);
    for (int i = 0; i < g.n; ++i)
      for (int j = i; j < g.n; ++j) {
        double r = 0.0;
        for (int k = 0; k < g.n; ++k)
          r += s.decomposition.values[k] * s.decomposition.vec(i, k) * s.decomposition.vec(j, k);
        CHECK(std::fabs(r - a(i, j)) <= 1e-7);
      }
  }
}

TEST_CASE("blow_up spectrum property") {
  Graph base = random_regular(8, 3, 9);
  Spectrum orig = random_walk_spectrum(base);
  for (int t : {2, 3}) {
    Spectrum blown = random_walk_spectrum(blow_up(base, t));
    std::vector<double> want = orig.eigenvalues;
    for (int i = 0; i < (t - 1) * base.n; ++i) want.push_back(0.0);
    std::sort(want.begin(), want.end(), std::greater<>());
    CHECK(matches_multiset(blown.eigenvalues, want, 1e-8));
  }
}

TEST_CASE("union spectrum is the multiset union") {
  Graph k3 = complete_multipartite(3, 1);
  Graph u3 = disjoint_union({k3, k3, k3});
  Spectrum s = random_walk_spectrum(u3);
  std::vector<double> want{1.0, 1.0, 1.0, -0.5, -0.5, -0.5, -0.5, -0.5, -0.5};
  CHECK(matches_multiset(s.eigenvalues, want, 1e-9));
  CHECK(threshold_rank(s, 0.01) == 3);
}

TEST_CASE("threshold rank") {
  Graph k3 = complete_multipartite(3, 1);
  Spectrum s3 = random_walk_spectrum(k3);
  CHECK(threshold_rank(s3, 0.01) == 1);

  Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Spectrum sc = random_walk_spectrum(c4);
  CHECK(threshold_rank(sc, -0.5) == 3);
  CHECK(threshold_rank(sc, 0.5) == 1);
  // ties at exactly eps do not count as larger
  CHECK(threshold_rank(sc, 0.0) == 1);

  // monotone non-increasing in eps
  Graph g = random_regular(14, 5, 3);
  Spectrum s = random_walk_spectrum(g);
  int prev = g.n + 1;
  for (double eps = -0.9; eps < 0.95; eps += 0.05) {
    int r = threshold_rank(s, eps);
    CHECK(r <= prev);
    CHECK(r >= 1);
    prev = r;
  }

  // union of two K_{5,5,5}: threshold rank 2 at eps = 0.1
  Graph two = disjoint_union({complete_multipartite(3, 5), complete_multipartite(3, 5)});
  CHECK(threshold_rank(random_walk_spectrum(two), 0.1) == 2);

  CHECK_THROWS_AS(threshold_rank(s3, 1.0), PreconditionError);
}

TEST_CASE("local_to_global: identity and all-ones") {
  Graph k3 = complete_multipartite(3, 1);

  SymmetricMatrix id(3);
  for (int i = 0; i < 3; ++i) id.set(i, i, 1.0);
  auto res = local_to_global_check(id, k3, 0.01, 1);
  CHECK(res.edge_average == 0.0);  // no self-loops
  CHECK(res.holds);

  SymmetricMatrix ones(3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) ones.set(i, j, 1.0);
  double lambda = -0.5 + 1e-6;
  auto r2 = local_to_global_check(ones, k3, lambda, 1);
  CHECK(r2.edge_average == doctest::Approx(1.0));
  CHECK(r2.bound == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r2.holds);
  CHECK_FALSE(r2.lambda_in_positive_range);
}

TEST_CASE("local_to_global rejects non-PSD and over-trace input") {
  Graph k3 = complete_multipartite(3, 1);
  SymmetricMatrix neg(3);
  neg.set(0, 1, 1.0);  // eigenvalues {1, 0, -1}
  CHECK_THROWS_AS(local_to_global_check(neg, k3, 0.5, 1), PreconditionError);

  SymmetricMatrix big(3);
  for (int i = 0; i < 3; ++i) big.set(i, i, 2.0);
  CHECK_THROWS_AS(local_to_global_check(big, k3, 0.5, 1), PreconditionError);
}

TEST_CASE("local_to_global property: random PSD on random regular graphs") {
  Rng rng(424242);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 8 + static_cast<int>(rng.next_below(13));
    int d = 3 + static_cast<int>(rng.next_below(4));
    if ((n * d) % 2 != 0) d += 1;
    Graph g = random_regular(n, d, rng.next_u64());

    int k = 1 + static_cast<int>(rng.next_below(n));
    SymmetricMatrix m(n);
    {
      std::vector<double> z(static_cast<std::size_t>(n) * k);
      for (auto& x : z) x = rng.next_normal();
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0.0;
          for (int t = 0; t < k; ++t) s += z[i * k + t] * z[j * k + t];
          m.set(i, j, s);
        }
    }
    double tr = m.trace();
    if (tr <= 0.0) continue;
    double scale = n / tr;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m.set(i, j, m(i, j) * scale);

    double lambda = rng.next_in(0.01, 0.9);
    Spectrum s = random_walk_spectrum(g);
    int r = threshold_rank(s, lambda);
    auto res = local_to_global_check(m, g, lambda, r);
    if (!res.holds) ++violations;
  }
  CHECK(violations == 0);
}
