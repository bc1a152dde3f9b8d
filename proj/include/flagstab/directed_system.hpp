#ifndef FLAGSTAB_DIRECTED_SYSTEM_HPP
#define FLAGSTAB_DIRECTED_SYSTEM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "flagstab/flags.hpp"
#include "flagstab/lie_theorem.hpp"
#include "flagstab/liealg.hpp"

namespace flagstab {

// A finite chain of finite-dimensional algebras with modules and
// embeddings: the computable shadow of a locally finite algebra acting on
// an integrable module.  The union object is never materialized; every
// statement is per level plus compatibility.
//
// The constructor validates shapes only; the mathematical invariants
// (injective bracket-preserving embeddings, action-intertwining module
// embeddings) are checked by check_chain_invariants so that corrupted
// inputs produce reports instead of aborting construction.
class AlgebraChain {
 public:
  struct LevelInput {
    LieAlgebra algebra;
    Index module_dim;
    std::vector<Mat> action;
  };

  // algebra_embeddings[n]: dim(n+1) x dim(n); module_embeddings[n]:
  // module_dim(n+1) x module_dim(n); one fewer than levels.
  AlgebraChain(std::vector<LevelInput> levels, std::vector<Mat> algebra_embeddings,
               std::vector<Mat> module_embeddings);

  Index levels() const { return static_cast<Index>(algebras_.size()); }
  const LieAlgebra& algebra(Index n) const { return *algebras_[static_cast<std::size_t>(n)]; }
  const Representation& module(Index n) const { return *modules_[static_cast<std::size_t>(n)]; }
  const Mat& algebra_embedding(Index n) const {
    return algebra_embeddings_[static_cast<std::size_t>(n)];
  }
  const Mat& module_embedding(Index n) const {
    return module_embeddings_[static_cast<std::size_t>(n)];
  }

 private:
  std::vector<std::unique_ptr<LieAlgebra>> algebras_;
  std::vector<std::unique_ptr<Representation>> modules_;
  std::vector<Mat> algebra_embeddings_;
  std::vector<Mat> module_embeddings_;
};

/// Injectivity, bracket preservation and action intertwining of every
/// embedding, checked on basis elements.
Report check_chain_invariants(const AlgebraChain& chain);

/// gl_1 < gl_2 < ... < gl_N with natural modules and upper-left-corner
/// embeddings.  1 <= N <= 6 (SizeCap).
AlgebraChain build_gl_chain(Index levels);

/// The upper-triangular subalgebra at every level of a gl chain; each is
/// solvable and embeds into the next one.
std::vector<Subalgebra> borel_subchain(const AlgebraChain& chain);

// One full flag per level, in that level's module coordinates, with the
// level-n flag equal to the restriction of the level-(n+1) flag along the
// module embedding.
struct CompatibleFlagFamily {
  std::vector<Flag> level_flags;
};

/// Lie's-theorem flags per level, then top-down replacement by restriction
/// along the module embeddings.  Every level flag is stabilized by that
/// level's subalgebra.  Propagates FieldNotSplit.
CompatibleFlagFamily flags_per_level(const AlgebraChain& chain,
                                     const std::vector<Subalgebra>& subalgebras);

/// The pullback {v : E v in S} of each chain member along an injective
/// module embedding; the coordinate-free route to the same flag that
/// restrict_chain produces in basis coordinates.
Flag pullback_flag(const Flag& flag, const Mat& module_embedding);

/// Per level: (a) the stabilizer of the flag in the full level algebra
/// equals the given subalgebra, (b) the stabilizer is solvable, (c) the
/// flag is maximal, (d) consecutive flags are compatible.
Report verify_main_theorem(const AlgebraChain& chain, const std::vector<Subalgebra>& subalgebras,
                           const CompatibleFlagFamily& flags);

struct MaximalityProbe {
  Report report;  // clean = no solvable proper extension found (evidence, not proof)
  std::optional<Vec> witness;              // a solvable strict extension, when found
  std::optional<Index> witness_closure_dim;
};

/// Tries every complement basis vector and `trials` seeded pseudo-random
/// combinations; any solvable closure of B plus an outside element
/// disproves maximality and is returned as a witness.
MaximalityProbe one_step_maximality_probe(const LieAlgebra& L, const Subalgebra& B, int trials,
                                          std::uint64_t seed);

}  // namespace flagstab

#endif
