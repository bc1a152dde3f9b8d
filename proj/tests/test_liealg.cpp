#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "flagstab/liealg.hpp"

using namespace flagstab;
using fixtures::vec;

TEST_CASE("bracket matches the structure constants") {
  const LieAlgebra sl2 = fixtures::sl2();
  // [h, e] = 2e, read off the table that was built from gl2 commutators.
  REQUIRE(bracket(sl2, vec({1, 0, 0}), vec({0, 1, 0})) == vec({0, 2, 0}));
  REQUIRE(bracket(sl2, vec({1, 0, 0}), vec({0, 0, 1})) == vec({0, 0, -2}));
  REQUIRE(bracket(sl2, vec({0, 1, 0}), vec({0, 0, 1})) == vec({1, 0, 0}));

  const LieAlgebra ab = fixtures::abelian(3);
  REQUIRE(bracket(ab, vec({1, 2, 3}), vec({4, 5, 6})) == Vec(Vec::Zero(3)));
}

TEST_CASE("sl2 fixture agrees with gl2 commutators") {
  // Independent route: compute [x, y] inside gl2 and compare against the
  // hand-written sl2 table on corresponding coordinates.
  const LieAlgebra gl2 = general_linear(2);
  const LieAlgebra sl2 = fixtures::sl2();
  const std::vector<Vec> in_gl2 = {vec({1, 0, 0, -1}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0})};
  const Mat to_gl2 = [&] {
    Mat m(4, 3);
    for (Index j = 0; j < 3; ++j) m.col(j) = in_gl2[static_cast<std::size_t>(j)];
    return m;
  }();
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      const Vec via_gl2 = bracket(gl2, in_gl2[static_cast<std::size_t>(i)],
                                  in_gl2[static_cast<std::size_t>(j)]);
      const Vec via_sl2 = sl2.basis_bracket(i, j);
      REQUIRE(Vec(to_gl2 * via_sl2) == via_gl2);
    }
  }
}

TEST_CASE("bracket is antisymmetric and bilinear on random vectors") {
  const LieAlgebra gl3 = general_linear(3);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec x = fixtures::random_rational_vec(rng, 9);
    const Vec y = fixtures::random_rational_vec(rng, 9);
    const Vec z = fixtures::random_rational_vec(rng, 9);
    REQUIRE(bracket(gl3, x, x) == Vec(Vec::Zero(9)));
    REQUIRE(bracket(gl3, x, y) == Vec(-bracket(gl3, y, x)));
    REQUIRE(bracket(gl3, x + z, y) == Vec(bracket(gl3, x, y) + bracket(gl3, z, y)));
  }
}

TEST_CASE("verify accepts valid tables and reports violations") {
  REQUIRE(verify(fixtures::sl2()).ok());
  REQUIRE(verify(general_linear(3)).ok());
  REQUIRE(verify(fixtures::abelian(1)).ok());

  // c_{01}^0 = c_{10}^0 = 1 breaks antisymmetry at (0,1).
  LieAlgebra::Table bad(2, std::vector<LieAlgebra::Terms>(2));
  bad[0][1] = {{0, Rational(1)}};
  bad[1][0] = {{0, Rational(1)}};
  const LieAlgebra broken = LieAlgebra::unchecked(2, {}, bad);
  const Report report = verify(broken);
  REQUIRE(!report.ok());
  REQUIRE(report.problems.front().find("antisymmetry") != std::string::npos);
  REQUIRE(report.problems.front().find("(0,1)") != std::string::npos);
  REQUIRE_THROWS_AS(LieAlgebra::checked(2, {}, bad), PreconditionViolated);

  // A Jacobi violation passes `checked` but is reported by verify.
  LieAlgebra::Table nonjacobi(3, std::vector<LieAlgebra::Terms>(3));
  auto set = [&](Index i, Index j, LieAlgebra::Terms terms) {
    LieAlgebra::Terms flipped;
    for (auto& [k, c] : terms) flipped.emplace_back(k, -c);
    nonjacobi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(terms);
    nonjacobi[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::move(flipped);
  };
  set(0, 1, {{2, Rational(1)}});
  set(1, 2, {{0, Rational(1)}});
  set(2, 0, {{0, Rational(1)}});  // [z,x] = x makes Jacobi fail
  const LieAlgebra j = LieAlgebra::checked(3, {}, nonjacobi);
  const Report jreport = verify(j);
  REQUIRE(!jreport.ok());
  REQUIRE(jreport.problems.front().find("Jacobi") != std::string::npos);
}

TEST_CASE("subalgebra closure examples") {
  const LieAlgebra gl2 = general_linear(2);
  REQUIRE(subalgebra_closure(gl2, {}).dim() == 0);
  REQUIRE(subalgebra_closure(gl2, {Vec::Unit(4, 0)}).dim() == 1);

  // {E12, E21} closes to sl2: [E12, E21] = E11 - E22.
  const Subalgebra sl2 = subalgebra_closure(gl2, {Vec::Unit(4, 1), Vec::Unit(4, 2)});
  REQUIRE(sl2.dim() == 3);
  REQUIRE(sl2.space().contains(vec({1, 0, 0, -1})));
  REQUIRE(!sl2.space().contains(vec({1, 0, 0, 1})));
}

TEST_CASE("subalgebra closure is a closure operator") {
  const LieAlgebra gl3 = general_linear(3);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Vec> gens;
    for (int g = 0; g < 2; ++g) gens.push_back(fixtures::random_rational_vec(rng, 9, 2));
    const Subalgebra closed = subalgebra_closure(gl3, gens);
    // extensive
    for (const Vec& g : gens) REQUIRE(closed.space().contains(g));
    // idempotent
    std::vector<Vec> basis;
    for (Index i = 0; i < closed.dim(); ++i) basis.push_back(closed.basis_vector(i));
    REQUIRE(subalgebra_closure(gl3, basis).space() == closed.space());
    // monotone
    std::vector<Vec> more = gens;
    more.push_back(fixtures::random_rational_vec(rng, 9, 2));
    REQUIRE(subspace_leq(closed.space(), subalgebra_closure(gl3, more).space()));
  }
}

TEST_CASE("derived series examples") {
  const LieAlgebra ab = fixtures::abelian(2);
  const auto ab_series = derived_series(whole_algebra(ab));
  REQUIRE(ab_series.size() == 2);
  REQUIRE(ab_series[0].dim() == 2);
  REQUIRE(ab_series[1].is_zero());

  const LieAlgebra two = fixtures::two_dim_solvable();
  const auto two_series = derived_series(whole_algebra(two));
  REQUIRE(two_series.size() == 3);
  REQUIRE(two_series[1] == span({vec({0, 1})}, 2));
  REQUIRE(two_series[2].is_zero());

  // [sl2, sl2] = sl2: the series stalls at full dimension.
  const auto sl2_series = derived_series(whole_algebra(fixtures::sl2()));
  REQUIRE(sl2_series.size() == 2);
  REQUIRE(sl2_series[0].dim() == 3);
  REQUIRE(sl2_series[1].dim() == 3);

  // Strict decrease until stabilization, on the Borel of gl3.
  const LieAlgebra gl3 = general_linear(3);
  const auto borel_series = derived_series(fixtures::borel(gl3, 3));
  for (std::size_t i = 0; i + 1 < borel_series.size(); ++i) {
    REQUIRE(subspace_leq(borel_series[i + 1], borel_series[i]));
    if (!borel_series[i + 1].is_zero())
      REQUIRE(borel_series[i + 1].dim() < borel_series[i].dim());
  }
}

TEST_CASE("solvability verdicts") {
  const LieAlgebra gl3 = general_linear(3);
  REQUIRE(is_solvable(fixtures::borel(gl3, 3)));  // dim 6, three steps to zero
  REQUIRE(!is_solvable(whole_algebra(fixtures::sl2())));
  REQUIRE(is_solvable(Subalgebra(gl3, Subspace(9))));
}

TEST_CASE("action kernel and faithfulness") {
  const LieAlgebra gl2 = general_linear(2);
  const Representation natural = natural_representation(gl2, 2);
  REQUIRE(action_kernel(natural, whole_algebra(gl2)).is_zero());
  REQUIRE(is_faithful(natural, whole_algebra(gl2)));

  // Everything acting by zero: the kernel is all of A.
  const Representation zero_rep(gl2, 1, std::vector<Mat>(4, Mat::Zero(1, 1)));
  const Subalgebra diag = fixtures::matrix_units(gl2, 2, {{0, 0}, {1, 1}});
  REQUIRE(action_kernel(zero_rep, diag) == diag.space());
  REQUIRE(!is_faithful(zero_rep, diag));

  // <E12> in gl3 acting on <e1>: E12 e1 = 0, so the restriction kills it.
  const LieAlgebra gl3 = general_linear(3);
  const Representation nat3 = natural_representation(gl3, 3);
  const Subalgebra e12 = fixtures::matrix_units(gl3, 3, {{0, 1}});
  REQUIRE(action_kernel_on(nat3, e12, span({Vec::Unit(3, 0)}, 3)) == e12.space());
  REQUIRE(is_faithful(nat3, e12));
}

TEST_CASE("generated submodule examples") {
  const LieAlgebra gl2 = general_linear(2);
  const Representation natural = natural_representation(gl2, 2);
  const Subalgebra e12 = fixtures::matrix_units(gl2, 2, {{0, 1}});

  REQUIRE(generated_submodule(natural, e12, {}).is_zero());
  // E12 e2 = e1.
  REQUIRE(generated_submodule(natural, e12, {Vec::Unit(2, 1)}) == full_space(2));

  const Representation zero_rep(gl2, 2, std::vector<Mat>(4, Mat::Zero(2, 2)));
  const Vec v = vec({3, 5});
  REQUIRE(generated_submodule(zero_rep, whole_algebra(gl2), {v}) == span({v}, 2));
}

TEST_CASE("representation constructor enforces the homomorphism identity") {
  const LieAlgebra sl2 = fixtures::sl2();
  // Natural 2-dim representation: h, e, f as matrices.
  std::vector<Mat> good = {fixtures::mat(2, 2, {1, 0, 0, -1}), fixtures::mat(2, 2, {0, 1, 0, 0}),
                           fixtures::mat(2, 2, {0, 0, 1, 0})};
  REQUIRE_NOTHROW(Representation(sl2, 2, good));

  std::vector<Mat> bad = good;
  bad[2] = fixtures::mat(2, 2, {0, 0, 2, 0});  // breaks [e,f] = h
  REQUIRE_THROWS_AS(Representation(sl2, 2, bad), PreconditionViolated);
}

TEST_CASE("subalgebra constructor rejects non-closed subspaces") {
  const LieAlgebra gl2 = general_linear(2);
  // span{E12, E21} is not closed: [E12, E21] = E11 - E22 escapes.
  REQUIRE_THROWS_AS(Subalgebra(gl2, span({Vec::Unit(4, 1), Vec::Unit(4, 2)}, 4)),
                    PreconditionViolated);
}
