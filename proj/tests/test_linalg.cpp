#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flagstab/linalg.hpp"

using namespace flagstab;

namespace {

Mat make(Index rows, Index cols, std::initializer_list<int> entries) {
  Mat m(rows, cols);
  auto it = entries.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Rational(*it++);
  return m;
}

Vec vec(std::initializer_list<int> entries) {
  Vec v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (int e : entries) v(i++) = Rational(e);
  return v;
}

Vec unit(Index n, Index i) {
  Vec v = Vec::Zero(n);
  v(i) = 1;
  return v;
}

// Small random rational matrices for the property checks.
Mat random_matrix(std::mt19937& rng, Index rows, Index cols) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Rational(num(rng), den(rng));
  return m;
}

// Independent determinant route (cofactor expansion) used as the oracle
// for the characteristic polynomial.
Rational det_by_cofactors(const Mat& m) {
  const Index n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational acc(0);
  int sign = 1;
  for (Index j = 0; j < n; ++j) {
    Mat minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r) {
      Index cc = 0;
      for (Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    acc += Rational(sign) * m(0, j) * det_by_cofactors(minor);
    sign = -sign;
  }
  return acc;
}

}  // namespace

TEST_CASE("rref examples") {
  const Mat id2 = Mat::Identity(2, 2);
  REQUIRE(rref(id2) == id2);

  const Mat m = make(2, 2, {2, 4, 1, 2});
  const Mat expected = make(2, 2, {1, 2, 0, 0});
  REQUIRE(rref(m) == expected);

  const Mat z = Mat::Zero(3, 3);
  REQUIRE(rref(z) == z);
}

TEST_CASE("rref is idempotent and preserves the row space") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const Mat m = random_matrix(rng, 4, 5);
    const Mat e = rref(m);
    REQUIRE(rref(e) == e);
    const Subspace row_space(5, e);
    for (Index i = 0; i < m.rows(); ++i) {
      REQUIRE(row_space.contains(m.row(i).transpose()));
    }
    REQUIRE(row_space == Subspace(5, m));
  }
}

TEST_CASE("span examples") {
  const Vec e1 = unit(3, 0);
  const Subspace s = span({e1, e1}, 3);
  REQUIRE(s.dim() == 1);
  REQUIRE(s.basis().row(0).transpose() == e1);

  REQUIRE(span({}, 2).is_zero());

  const Subspace full = span({vec({1, 1}), vec({1, -1})}, 2);
  REQUIRE(full == full_space(2));

  REQUIRE_THROWS_AS(span({vec({1, 2, 3})}, 2), DimensionMismatch);
}

TEST_CASE("sum and intersection examples") {
  const Subspace a = span({unit(2, 0)}, 2);
  const Subspace b = span({unit(2, 1)}, 2);
  REQUIRE(subspace_sum(a, b) == full_space(2));
  REQUIRE(subspace_intersect(a, b).is_zero());

  REQUIRE(subspace_sum(a, a) == a);
  REQUIRE(subspace_intersect(a, a) == a);

  const Subspace c = span({unit(3, 0), unit(3, 1)}, 3);
  const Subspace d = span({unit(3, 1), unit(3, 2)}, 3);
  REQUIRE(subspace_intersect(c, d) == span({unit(3, 1)}, 3));

  REQUIRE_THROWS_AS(subspace_sum(a, c), DimensionMismatch);
}

TEST_CASE("dimension formula on random subspaces") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 5;
    const Subspace a(n, random_matrix(rng, 1 + trial % 5, n));
    const Subspace b(n, random_matrix(rng, 1 + (trial / 5) % 5, n));
    const Subspace s = subspace_sum(a, b);
    const Subspace i = subspace_intersect(a, b);
    REQUIRE(a.dim() + b.dim() == s.dim() + i.dim());
    REQUIRE(subspace_leq(i, a));
    REQUIRE(subspace_leq(i, b));
    REQUIRE(subspace_leq(a, s));
    REQUIRE(subspace_leq(b, s));
  }
}

TEST_CASE("contains and leq") {
  const Subspace zero(3);
  REQUIRE(zero.contains(Vec::Zero(3)));
  REQUIRE(!zero.contains(unit(3, 0)));

  const Subspace a = span({vec({1, 2})}, 2);
  REQUIRE(subspace_leq(a, a));
  REQUIRE(a.contains(vec({2, 4})));
  REQUIRE(!a.contains(vec({2, 5})));
}

TEST_CASE("kernel and solve examples") {
  REQUIRE(kernel(Mat::Identity(3, 3)).is_zero());
  REQUIRE(kernel(Mat::Zero(4, 4)) == full_space(4));
  REQUIRE(kernel(make(2, 2, {1, 1, 2, 2})) == span({vec({1, -1})}, 2));

  const Mat m = make(2, 2, {1, 1, 2, 2});
  REQUIRE(!solve(m, vec({1, 0})).has_value());
  const auto x = solve(m, vec({3, 6}));
  REQUIRE(x.has_value());
  REQUIRE(Vec(m * *x) == vec({3, 6}));
}

TEST_CASE("solve returns exact solutions on random consistent systems") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Mat m = random_matrix(rng, 4, 3);
    const Vec x0 = random_matrix(rng, 3, 1).col(0);
    const Vec rhs = m * x0;
    const auto x = solve(m, rhs);
    REQUIRE(x.has_value());
    REQUIRE(Vec(m * *x) == rhs);
  }
}

TEST_CASE("characteristic polynomial agrees with a determinant oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 4;
    const Mat m = random_matrix(rng, n, n);
    const auto poly = characteristic_polynomial(m);
    REQUIRE(poly.size() == static_cast<std::size_t>(n) + 1);
    REQUIRE(poly.back() == 1);
    // Evaluate at n+1 points and compare with det(tI - m); a degree-n
    // polynomial is pinned down by n+1 values.
    for (int t = 0; t <= n; ++t) {
      Mat shifted = -m;
      for (Index i = 0; i < n; ++i) shifted(i, i) += Rational(t);
      Rational direct = det_by_cofactors(shifted);
      Rational via_poly(0);
      for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        via_poly = via_poly * Rational(t) + *it;
      REQUIRE(via_poly == direct);
    }
  }
}

TEST_CASE("rational eigenvalue examples") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  auto eigs = rational_eigenvalues(d);
  REQUIRE(eigs.size() == 2);
  REQUIRE(eigs[0].first == 1);
  REQUIRE(eigs[0].second == span({unit(2, 0)}, 2));
  REQUIRE(eigs[1].first == 2);
  REQUIRE(eigs[1].second == span({unit(2, 1)}, 2));

  const Mat nilpotent = make(2, 2, {0, 1, 0, 0});
  eigs = rational_eigenvalues(nilpotent);
  REQUIRE(eigs.size() == 1);
  REQUIRE(eigs[0].first == 0);
  REQUIRE(eigs[0].second == span({unit(2, 0)}, 2));

  const Mat rotation = make(2, 2, {0, -1, 1, 0});
  REQUIRE(rational_eigenvalues(rotation).empty());
}

TEST_CASE("fractional eigenvalues are found via the leading coefficient") {
  // diag(1/2, -3/2): the primitive characteristic polynomial is
  // 4t^2 + 4t - 3, so the roots need divisors of the leading term.
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = Rational(1, 2);
  d(1, 1) = Rational(-3, 2);
  const auto eigs = rational_eigenvalues(d);
  REQUIRE(eigs.size() == 2);
  REQUIRE(eigs[0].first == Rational(-3, 2));
  REQUIRE(eigs[1].first == Rational(1, 2));

  // A repeated rational eigenvalue with a 2-dimensional eigenspace.
  Mat j = Mat::Zero(3, 3);
  j(0, 0) = Rational(5, 3);
  j(1, 1) = Rational(5, 3);
  j(2, 2) = Rational(5, 3);
  j(1, 2) = 1;
  const auto jeigs = rational_eigenvalues(j);
  REQUIRE(jeigs.size() == 1);
  REQUIRE(jeigs[0].first == Rational(5, 3));
  REQUIRE(jeigs[0].second.dim() == 2);
}

TEST_CASE("eigenvalues annihilate their eigenspaces") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> diag(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    // Conjugate a rational diagonal matrix so the spectrum is known.
    const Index n = 3;
    Mat d = Mat::Zero(n, n);
    for (Index i = 0; i < n; ++i) d(i, i) = Rational(diag(rng), 1 + trial % 2);
    Mat p;
    do {
      p = random_matrix(rng, n, n);
    } while (rank(p) < n);
    // Solve P X = D P column by column to get m = P^{-1} D P exactly.
    Mat m(n, n);
    const Mat dp = d * p;
    for (Index j = 0; j < n; ++j) {
      const auto col = solve(p, dp.col(j));
      REQUIRE(col.has_value());
      m.col(j) = *col;
    }
    for (const auto& [lambda, space] : rational_eigenvalues(m)) {
      for (Index i = 0; i < space.basis().rows(); ++i) {
        const Vec v = space.basis().row(i).transpose();
        REQUIRE(Vec(m * v) == Vec(lambda * v));
      }
    }
    // Every diagonal entry shows up among the rational eigenvalues.
    const auto found = rational_eigenvalues(m);
    for (Index i = 0; i < n; ++i) {
      bool seen = false;
      for (const auto& [lambda, space] : found) seen = seen || lambda == d(i, i);
      REQUIRE(seen);
    }
  }
}
