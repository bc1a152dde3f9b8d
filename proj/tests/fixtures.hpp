#ifndef FLAGSTAB_TESTS_FIXTURES_HPP
#define FLAGSTAB_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "flagstab/directed_system.hpp"
#include "flagstab/liealg.hpp"
#include "flagstab/linalg.hpp"

namespace flagstab::fixtures {

inline Vec vec(std::initializer_list<int> entries) {
  Vec v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (int e : entries) v(i++) = Rational(e);
  return v;
}

inline Mat mat(Index rows, Index cols, std::initializer_list<int> entries) {
  Mat m(rows, cols);
  auto it = entries.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Rational(*it++);
  return m;
}

// sl2 with basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline LieAlgebra sl2() {
  LieAlgebra::Table table(3, std::vector<LieAlgebra::Terms>(3));
  auto set = [&](Index i, Index j, LieAlgebra::Terms terms) {
    LieAlgebra::Terms flipped;
    for (auto& [k, c] : terms) flipped.emplace_back(k, -c);
    table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(terms);
    table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::move(flipped);
  };
  set(0, 1, {{1, Rational(2)}});
  set(0, 2, {{2, Rational(-2)}});
  set(1, 2, {{0, Rational(1)}});
  return LieAlgebra::checked(3, {"h", "e", "f"}, std::move(table));
}

inline LieAlgebra abelian(Index n) {
  return LieAlgebra::checked(n, {}, LieAlgebra::Table(static_cast<std::size_t>(n),
                                                      std::vector<LieAlgebra::Terms>(
                                                          static_cast<std::size_t>(n))));
}

// Two-dimensional solvable algebra [x, y] = y.
inline LieAlgebra two_dim_solvable() {
  LieAlgebra::Table table(2, std::vector<LieAlgebra::Terms>(2));
  table[0][1] = {{1, Rational(1)}};
  table[1][0] = {{1, Rational(-1)}};
  return LieAlgebra::checked(2, {"x", "y"}, std::move(table));
}

// Upper-triangular subalgebra of gl_n (the Borel fixture).
inline Subalgebra borel(const LieAlgebra& gl, Index n) {
  std::vector<Vec> generators;
  for (Index a = 0; a < n; ++a)
    for (Index b = a; b < n; ++b) generators.push_back(Vec::Unit(n * n, a * n + b));
  return Subalgebra(gl, span(generators, n * n));
}

inline Subalgebra matrix_units(const LieAlgebra& gl, Index n,
                               std::initializer_list<std::pair<Index, Index>> units) {
  std::vector<Vec> generators;
  for (auto [a, b] : units) generators.push_back(Vec::Unit(n * n, a * n + b));
  return Subalgebra(gl, span(generators, n * n));
}

// Exact inverse by solving g X = I column by column.
inline Mat inverse_of(const Mat& g) {
  const Index n = g.rows();
  Mat inv(n, n);
  for (Index j = 0; j < n; ++j) {
    const auto col = solve(g, Vec::Unit(n, j));
    inv.col(j) = *col;
  }
  return inv;
}

inline Representation conjugated(const Representation& rep, const Mat& g) {
  const Mat ginv = inverse_of(g);
  std::vector<Mat> action;
  for (Index b = 0; b < rep.algebra().dim(); ++b)
    action.push_back(g * rep.action_of_basis(b) * ginv);
  return Representation(rep.algebra(), rep.module_dim(), std::move(action));
}

// Coordinates of g S g^{-1} for a subalgebra S of gl_n in matrix-unit
// coordinates.
inline Subalgebra conjugated_subalgebra(const LieAlgebra& gl, Index n, const Subalgebra& S,
                                        const Mat& g) {
  const Mat ginv = inverse_of(g);
  std::vector<Vec> generators;
  for (Index i = 0; i < S.dim(); ++i) {
    const Vec x = S.basis_vector(i);
    Mat X(n, n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) X(a, b) = x(a * n + b);
    const Mat Y = g * X * ginv;
    Vec y(n * n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) y(a * n + b) = Y(a, b);
    generators.push_back(y);
  }
  return Subalgebra(gl, span(generators, n * n));
}

// One-dimensional abelian algebra acting by the rotation matrix: the
// canonical non-split spectrum.
struct RotationFixture {
  LieAlgebra algebra = abelian(1);
  Representation rep{algebra, 2, {mat(2, 2, {0, -1, 1, 0})}};
};

inline Vec random_rational_vec(std::mt19937& rng, Index n, int max_abs = 3) {
  std::uniform_int_distribution<int> num(-max_abs, max_abs);
  std::uniform_int_distribution<int> den(1, 2);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = Rational(num(rng), den(rng));
  return v;
}

// A random element of a subspace: a random rational combination of its
// basis rows.
inline Vec random_in(std::mt19937& rng, const Subspace& s, int max_abs = 2) {
  Vec v = Vec::Zero(s.ambient_dim());
  std::uniform_int_distribution<int> num(-max_abs, max_abs);
  std::uniform_int_distribution<int> den(1, 2);
  for (Index i = 0; i < s.dim(); ++i)
    v += Rational(num(rng), den(rng)) * s.basis().row(i).transpose();
  return v;
}

// The gl chain transported through the leading corners of a fixed
// invertible matrix: each level keeps the natural action, the embeddings
// become x -> g_{k+1} iota(g_k^{-1} x g_k) g_{k+1}^{-1} and
// v -> g_{k+1} iota(g_k^{-1} v), and the Borels conjugate accordingly.
inline AlgebraChain conjugated_gl_chain(Index levels, const Mat& g_top) {
  std::vector<AlgebraChain::LevelInput> inputs;
  std::vector<Mat> algebra_embeddings, module_embeddings;
  std::vector<Mat> corners;
  for (Index k = 1; k <= levels; ++k) corners.push_back(g_top.topLeftCorner(k, k));

  for (Index k = 1; k <= levels; ++k) {
    LieAlgebra gl = general_linear(k);
    const Representation natural = natural_representation(gl, k);
    std::vector<Mat> action;
    for (Index b = 0; b < gl.dim(); ++b) action.push_back(natural.action_of_basis(b));
    inputs.push_back(AlgebraChain::LevelInput{std::move(gl), k, std::move(action)});

    if (k < levels) {
      const Mat& gn = corners[static_cast<std::size_t>(k - 1)];
      const Mat& gn1 = corners[static_cast<std::size_t>(k)];
      const Mat gn_inv = inverse_of(gn);
      const Mat gn1_inv = inverse_of(gn1);

      // Corner-embed after undoing the level conjugation, then redo it
      // upstairs: x -> g_{k+1} iota(g_k^{-1} x g_k) g_{k+1}^{-1}.
      Mat embed = Mat::Zero((k + 1) * (k + 1), k * k);
      for (Index a = 0; a < k; ++a) {
        for (Index b = 0; b < k; ++b) {
          Mat x = Mat::Zero(k, k);
          x(a, b) = 1;
          const Mat inner = gn_inv * x * gn;
          Mat big = Mat::Zero(k + 1, k + 1);
          big.topLeftCorner(k, k) = inner;
          const Mat out = gn1 * big * gn1_inv;
          for (Index c = 0; c <= k; ++c)
            for (Index d = 0; d <= k; ++d) embed(c * (k + 1) + d, a * k + b) = out(c, d);
        }
      }
      algebra_embeddings.push_back(std::move(embed));

      Mat embed_v = Mat::Zero(k + 1, k);
      Mat corner = Mat::Zero(k + 1, k);
      for (Index i = 0; i < k; ++i) corner(i, i) = 1;
      embed_v = gn1 * corner * gn_inv;
      module_embeddings.push_back(std::move(embed_v));
    }
  }
  return AlgebraChain(std::move(inputs), std::move(algebra_embeddings),
                      std::move(module_embeddings));
}

}  // namespace flagstab::fixtures

#endif
