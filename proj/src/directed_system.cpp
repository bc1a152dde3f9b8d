#include "flagstab/directed_system.hpp"

#include <random>
#include <sstream>

namespace flagstab {

AlgebraChain::AlgebraChain(std::vector<LevelInput> levels, std::vector<Mat> algebra_embeddings,
                           std::vector<Mat> module_embeddings)
    : algebra_embeddings_(std::move(algebra_embeddings)),
      module_embeddings_(std::move(module_embeddings)) {
  if (levels.empty()) throw DimensionMismatch("chain needs at least one level");
  if (algebra_embeddings_.size() != levels.size() - 1 ||
      module_embeddings_.size() != levels.size() - 1)
    throw DimensionMismatch("one embedding pair per consecutive level required");

  for (auto& level : levels) {
    algebras_.push_back(std::make_unique<LieAlgebra>(std::move(level.algebra)));
    modules_.push_back(std::make_unique<Representation>(*algebras_.back(), level.module_dim,
                                                        std::move(level.action)));
  }
  for (std::size_t n = 0; n + 1 < algebras_.size(); ++n) {
    if (algebra_embeddings_[n].rows() != algebras_[n + 1]->dim() ||
        algebra_embeddings_[n].cols() != algebras_[n]->dim())
      throw DimensionMismatch("algebra embedding has wrong shape");
    if (module_embeddings_[n].rows() != modules_[n + 1]->module_dim() ||
        module_embeddings_[n].cols() != modules_[n]->module_dim())
      throw DimensionMismatch("module embedding has wrong shape");
  }
}

Report check_chain_invariants(const AlgebraChain& chain) {
  Report report;
  for (Index n = 0; n + 1 < chain.levels(); ++n) {
    const LieAlgebra& low = chain.algebra(n);
    const LieAlgebra& high = chain.algebra(n + 1);
    const Mat& embed = chain.algebra_embedding(n);
    const Mat& embed_v = chain.module_embedding(n);
    std::ostringstream at;
    at << "level " << n << ": ";

    if (rank(embed) != low.dim()) report.fail(at.str() + "algebra embedding is not injective");
    if (rank(embed_v) != chain.module(n).module_dim())
      report.fail(at.str() + "module embedding is not injective");

    for (Index i = 0; i < low.dim(); ++i) {
      for (Index j = i + 1; j < low.dim(); ++j) {
        const Vec mapped = embed * low.basis_bracket(i, j);
        const Vec bracketed = bracket(high, embed.col(i), embed.col(j));
        if (mapped != bracketed) {
          report.fail(at.str() + "embedding does not preserve the bracket");
          i = low.dim();
          break;
        }
      }
    }

    bool intertwines = true;
    for (Index b = 0; b < low.dim() && intertwines; ++b) {
      const Mat low_act = chain.module(n).action_of_basis(b);
      const Mat high_act = chain.module(n + 1).action_of(embed.col(b));
      for (Index v = 0; v < chain.module(n).module_dim(); ++v) {
        const Vec lhs = embed_v * Vec(low_act.col(v));
        const Vec rhs = high_act * Vec(embed_v.col(v));
        if (lhs != rhs) {
          report.fail(at.str() + "module embedding does not intertwine the actions");
          intertwines = false;
          break;
        }
      }
    }
  }
  return report;
}

AlgebraChain build_gl_chain(Index levels) {
  if (levels < 1 || levels > 6) throw SizeCap("gl chain levels capped at 1..6");
  std::vector<AlgebraChain::LevelInput> inputs;
  std::vector<Mat> algebra_embeddings, module_embeddings;
  for (Index k = 1; k <= levels; ++k) {
    LieAlgebra gl = general_linear(k);
    Representation natural = natural_representation(gl, k);
    std::vector<Mat> action;
    for (Index b = 0; b < gl.dim(); ++b) action.push_back(natural.action_of_basis(b));
    inputs.push_back(AlgebraChain::LevelInput{std::move(gl), k, std::move(action)});

    if (k < levels) {
      Mat embed = Mat::Zero((k + 1) * (k + 1), k * k);
      for (Index a = 0; a < k; ++a)
        for (Index b = 0; b < k; ++b) embed(a * (k + 1) + b, a * k + b) = 1;
      algebra_embeddings.push_back(std::move(embed));

      Mat embed_v = Mat::Zero(k + 1, k);
      for (Index i = 0; i < k; ++i) embed_v(i, i) = 1;
      module_embeddings.push_back(std::move(embed_v));
    }
  }
  AlgebraChain chain(std::move(inputs), std::move(algebra_embeddings),
                     std::move(module_embeddings));
  const Report invariants = check_chain_invariants(chain);
  if (!invariants.ok()) throw Error("internal: gl chain failed its invariants");
  return chain;
}

std::vector<Subalgebra> borel_subchain(const AlgebraChain& chain) {
  std::vector<Subalgebra> borels;
  for (Index n = 0; n < chain.levels(); ++n) {
    const Index dim = chain.algebra(n).dim();
    Index k = 0;
    while (k * k < dim) ++k;
    if (k * k != dim) throw PreconditionViolated("level algebra is not a gl_n");
    std::vector<Vec> generators;
    for (Index a = 0; a < k; ++a)
      for (Index b = a; b < k; ++b) generators.push_back(Vec::Unit(dim, a * k + b));
    borels.emplace_back(chain.algebra(n), span(generators, dim));
  }
  return borels;
}

Flag pullback_flag(const Flag& flag, const Mat& module_embedding) {
  std::vector<Subspace> members;
  for (const Subspace& big : flag.chain) {
    const Mat conditions = big.membership_conditions() * module_embedding;
    const Subspace pulled = kernel(conditions);
    if (members.empty() || !(members.back() == pulled)) members.push_back(pulled);
  }
  return make_flag(module_embedding.cols(), std::move(members));
}

CompatibleFlagFamily flags_per_level(const AlgebraChain& chain,
                                     const std::vector<Subalgebra>& subalgebras) {
  if (static_cast<Index>(subalgebras.size()) != chain.levels())
    throw DimensionMismatch("one subalgebra per level required");

  std::vector<Flag> flags;
  for (Index n = 0; n < chain.levels(); ++n)
    flags.push_back(full_flag(chain.module(n), subalgebras[static_cast<std::size_t>(n)]));

  // Top-down: the big flag is authoritative, lower flags are its
  // restrictions along the module embeddings.
  for (Index n = chain.levels() - 2; n >= 0; --n) {
    const Mat& embed = chain.module_embedding(n);
    const Flag& above = flags[static_cast<std::size_t>(n + 1)];

    // Image of the level-n module upstairs, then W-coordinates back to
    // level-n coordinates through the embedding.
    std::vector<Vec> columns;
    for (Index j = 0; j < embed.cols(); ++j) columns.push_back(embed.col(j));
    const Subspace image = span(columns, embed.rows());
    const Flag restricted = restrict_chain(above.chain, image);

    Mat change(image.dim(), embed.cols());
    for (Index j = 0; j < embed.cols(); ++j) {
      const auto coords = image.coordinates_of(embed.col(j));
      change.col(j) = *coords;  // columns of the embedding span the image
    }
    std::vector<Subspace> members;
    for (const Subspace& member : restricted.chain) {
      Mat rows(member.dim(), embed.cols());
      for (Index i = 0; i < member.dim(); ++i) {
        const auto v = solve(change, member.basis().row(i).transpose());
        if (!v) throw Error("internal: restriction left the embedded module");
        rows.row(i) = v->transpose();
      }
      members.emplace_back(embed.cols(), rows);
    }
    flags[static_cast<std::size_t>(n)] = make_flag(embed.cols(), std::move(members));

    if (!is_stabilized(flags[static_cast<std::size_t>(n)], chain.module(n),
                       subalgebras[static_cast<std::size_t>(n)]))
      throw Error("internal: restricted flag lost invariance");
  }
  return CompatibleFlagFamily{std::move(flags)};
}

Report verify_main_theorem(const AlgebraChain& chain, const std::vector<Subalgebra>& subalgebras,
                           const CompatibleFlagFamily& flags) {
  Report report;
  if (static_cast<Index>(subalgebras.size()) != chain.levels() ||
      static_cast<Index>(flags.level_flags.size()) != chain.levels()) {
    report.fail("need one subalgebra and one flag per level");
    return report;
  }
  for (Index n = 0; n < chain.levels(); ++n) {
    std::ostringstream at;
    at << "level " << n << ": ";
    const Flag& flag = flags.level_flags[static_cast<std::size_t>(n)];
    if (!is_valid_flag(flag)) {
      report.fail(at.str() + "not a valid flag");
      continue;
    }
    const Subalgebra ambient = whole_algebra(chain.algebra(n));
    const Subalgebra st = stabilizer(flag, chain.module(n), ambient);
    const Subalgebra& expected = subalgebras[static_cast<std::size_t>(n)];
    if (!(st.space() == expected.space())) {
      std::ostringstream os;
      os << at.str() << "stabilizer (dim " << st.dim() << ") differs from the subalgebra (dim "
         << expected.dim() << ")";
      report.fail(os.str());
    }
    if (!is_solvable(st)) report.fail(at.str() + "stabilizer is not solvable");
    if (!is_maximal(flag)) report.fail(at.str() + "flag is not maximal");
    if (n + 1 < chain.levels()) {
      const Flag pulled = pullback_flag(flags.level_flags[static_cast<std::size_t>(n + 1)],
                                        chain.module_embedding(n));
      if (pulled.chain != flag.chain) report.fail(at.str() + "flag is not compatible with the next level");
    }
  }
  return report;
}

MaximalityProbe one_step_maximality_probe(const LieAlgebra& L, const Subalgebra& B, int trials,
                                          std::uint64_t seed) {
  MaximalityProbe probe;
  if (!is_solvable(B)) {
    probe.report.fail("input subalgebra is not solvable");
    return probe;
  }

  std::vector<Index> complement;
  {
    std::vector<bool> is_pivot(static_cast<std::size_t>(L.dim()), false);
    for (Index p : B.space().pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
    for (Index j = 0; j < L.dim(); ++j)
      if (!is_pivot[static_cast<std::size_t>(j)]) complement.push_back(j);
  }

  const auto try_extension = [&](const Vec& x) {
    if (probe.witness) return;
    const std::vector<Vec> generators = [&] {
      std::vector<Vec> g;
      for (Index i = 0; i < B.dim(); ++i) g.push_back(B.basis_vector(i));
      g.push_back(x);
      return g;
    }();
    const Subalgebra closure = subalgebra_closure(L, generators);
    if (closure.dim() > B.dim() && is_solvable(closure)) {
      probe.witness = x;
      probe.witness_closure_dim = closure.dim();
      std::ostringstream os;
      os << "solvable proper extension found (closure dim " << closure.dim() << ")";
      probe.report.fail(os.str());
    }
  };

  for (Index j : complement) try_extension(Vec::Unit(L.dim(), j));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  for (int t = 0; t < trials && !complement.empty(); ++t) {
    Vec x = Vec::Zero(L.dim());
    bool nonzero = false;
    for (Index j : complement) {
      const Rational c(num(rng), den(rng));
      if (c != 0) nonzero = true;
      x(j) = c;
    }
    if (nonzero) try_extension(x);
  }
  return probe;
}

}  // namespace flagstab
