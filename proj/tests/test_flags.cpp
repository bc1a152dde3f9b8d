#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "flagstab/flags.hpp"

using namespace flagstab;
using fixtures::vec;

namespace {

Subspace coords(std::initializer_list<Index> units, Index n) {
  std::vector<Vec> vs;
  for (Index u : units) vs.push_back(Vec::Unit(n, u));
  return span(vs, n);
}

}  // namespace

TEST_CASE("generalized flag predicate") {
  const Flag std3 = standard_flag(3);
  REQUIRE(is_generalized_flag({3, std3.chain}).ok());
  REQUIRE(is_maximal(GeneralizedFlagCheckInput{3, std3.chain}));

  const std::vector<Subspace> coarse{Subspace(3), coords({0}, 3), full_space(3)};
  REQUIRE(is_generalized_flag({3, coarse}).ok());
  REQUIRE(!is_maximal(GeneralizedFlagCheckInput{3, coarse}));

  const std::vector<Subspace> incomparable{coords({0}, 2), coords({1}, 2)};
  const Report bad = is_generalized_flag({2, incomparable});
  REQUIRE(!bad.ok());
  REQUIRE(bad.problems.front().find("totally ordered") != std::string::npos);

  // Dropping the endpoints breaks the cover condition.
  REQUIRE(!is_generalized_flag({3, {coords({0}, 3), full_space(3)}}).ok());
  REQUIRE(!is_generalized_flag({3, {Subspace(3), coords({0}, 3)}}).ok());
}

TEST_CASE("maximality verdicts and the InvalidFlag gate") {
  REQUIRE(is_maximal(standard_flag(3)));
  REQUIRE(is_maximal(standard_flag(1)));
  const Flag coarse = make_flag(3, {coords({0}, 3)});
  REQUIRE(!is_maximal(coarse));

  const GeneralizedFlagCheckInput invalid{2, {coords({0}, 2), coords({1}, 2)}};
  REQUIRE_THROWS_AS(is_maximal(invalid), InvalidFlag);
}

TEST_CASE("stabilizer of the standard flag in gl3 is the Borel") {
  const LieAlgebra gl3 = general_linear(3);
  const Representation natural = natural_representation(gl3, 3);
  const Subalgebra st = stabilizer(standard_flag(3), natural, whole_algebra(gl3));
  REQUIRE(st.dim() == 6);
  REQUIRE(st.space() == fixtures::borel(gl3, 3).space());

  // Brute-force oracle: decide for each matrix unit E_ab independently
  // whether it preserves every member, and compare spans.
  std::vector<Vec> stabilizing;
  for (Index a = 0; a < 3; ++a) {
    for (Index b = 0; b < 3; ++b) {
      bool keeps = true;
      const Mat act = natural.action_of_basis(a * 3 + b);
      for (const Subspace& member : standard_flag(3).chain) {
        for (Index i = 0; i < member.dim(); ++i)
          keeps = keeps && member.contains(act * member.basis().row(i).transpose());
      }
      if (keeps) stabilizing.push_back(Vec::Unit(9, a * 3 + b));
    }
  }
  REQUIRE(st.space() == span(stabilizing, 9));
}

TEST_CASE("stabilizer examples in gl2") {
  const LieAlgebra gl2 = general_linear(2);
  const Representation natural = natural_representation(gl2, 2);

  // No condition: the whole algebra.
  const Flag trivial = make_flag(2, {});
  REQUIRE(stabilizer(trivial, natural, whole_algebra(gl2)).dim() == 4);

  // {0, <e2>, k^2}: x e2 in <e2> forces the (0,1) entry to vanish.
  const Flag e2_flag = make_flag(2, {coords({1}, 2)});
  const Subalgebra st = stabilizer(e2_flag, natural, whole_algebra(gl2));
  REQUIRE(st.dim() == 3);
  REQUIRE(st.space() == span({Vec::Unit(4, 0), Vec::Unit(4, 2), Vec::Unit(4, 3)}, 4));
}

TEST_CASE("stabilizer respects a smaller ambient subalgebra") {
  const LieAlgebra gl2 = general_linear(2);
  const Representation natural = natural_representation(gl2, 2);
  const Subalgebra diag = fixtures::matrix_units(gl2, 2, {{0, 0}, {1, 1}});
  const Subalgebra st = stabilizer(standard_flag(2), natural, diag);
  REQUIRE(st.space() == diag.space());
}

TEST_CASE("is_stabilized examples") {
  const LieAlgebra gl3 = general_linear(3);
  const Representation nat3 = natural_representation(gl3, 3);
  REQUIRE(is_stabilized(standard_flag(3), nat3, fixtures::borel(gl3, 3)));

  const LieAlgebra gl2 = general_linear(2);
  const Representation nat2 = natural_representation(gl2, 2);
  const Subalgebra e21 = fixtures::matrix_units(gl2, 2, {{1, 0}});
  REQUIRE(!is_stabilized(standard_flag(2), nat2, e21));  // E21 e1 = e2
  REQUIRE(is_stabilized(standard_flag(2), nat2, Subalgebra(gl2, Subspace(4))));
}

TEST_CASE("restrict_chain examples") {
  const Flag std3 = standard_flag(3);
  const Subspace w = coords({0, 2}, 3);
  const Flag restricted = restrict_chain(std3.chain, w);
  REQUIRE(restricted.ambient_dim == 2);
  REQUIRE(restricted.length() == 3);
  REQUIRE(restricted.chain[1] == coords({0}, 2));  // e1 in W-coordinates

  const Flag to_zero = restrict_chain(std3.chain, Subspace(3));
  REQUIRE(to_zero.ambient_dim == 0);
  REQUIRE(to_zero.length() == 1);

  const Flag to_full = restrict_chain(std3.chain, full_space(3));
  REQUIRE(to_full.chain == std3.chain);

  REQUIRE_THROWS_AS(restrict_chain({coords({0}, 2), coords({1}, 2)}, full_space(2)), NotAChain);
}

TEST_CASE("restricting a maximal chain yields a full flag of W") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    // Random full flag: prefixes of the span of an invertible matrix.
    const Index n = 4;
    Mat g(n, n);
    do {
      for (Index i = 0; i < n; ++i) g.row(i) = fixtures::random_rational_vec(rng, n).transpose();
    } while (rank(g) < n);
    std::vector<Subspace> chain{Subspace(n)};
    for (Index d = 1; d <= n; ++d) chain.emplace_back(n, Mat(g.topRows(d)));

    const Subspace w(n, Mat(fixtures::random_rational_vec(rng, n).transpose()));
    const Flag restricted = restrict_chain(chain, w);
    REQUIRE(is_valid_flag(restricted));
    REQUIRE(is_maximal(restricted));  // quotients exactly 1 after dedupe
    REQUIRE(restricted.length() == w.dim() + 1);
  }
}

TEST_CASE("stabilizers of full flags are solvable and bracket-closed") {
  const LieAlgebra gl3 = general_linear(3);
  const Representation nat3 = natural_representation(gl3, 3);
  std::mt19937 rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    Mat g(3, 3);
    do {
      for (Index i = 0; i < 3; ++i) g.row(i) = fixtures::random_rational_vec(rng, 3).transpose();
    } while (rank(g) < 3);
    std::vector<Subspace> members;
    for (Index d = 1; d < 3; ++d) members.emplace_back(3, Mat(g.topRows(d)));
    const Flag flag = make_flag(3, std::move(members));
    const Subalgebra st = stabilizer(flag, nat3, whole_algebra(gl3));  // ctor asserts closure
    REQUIRE(is_solvable(st));
    REQUIRE(st.dim() == 6);
  }
}
