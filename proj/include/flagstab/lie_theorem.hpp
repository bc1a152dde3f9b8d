#ifndef FLAGSTAB_LIE_THEOREM_HPP
#define FLAGSTAB_LIE_THEOREM_HPP

#include <vector>

#include "flagstab/flags.hpp"
#include "flagstab/liealg.hpp"

namespace flagstab {

struct CommonEigenvector {
  Vec vector;     // nonzero element of the module
  Weight weight;  // rho(x) v = weight(x) v for every x in the subalgebra
};

// The classical Lie's theorem step, run constructively: induct on dim A
// through a codimension-one ideal, cut the joint weight space as an exact
// linear system, and extend the weight by a rational eigenvalue of the
// leftover generator on that space.
//
// Throws NotSolvable when A is not solvable, ZeroModule on an empty
// module, FieldNotSplit when an eigenvalue search leaves the rationals.
CommonEigenvector common_eigenvector(const Representation& rep, const Subalgebra& A);

/// Full flag 0 < V_1 < ... < V_n = k^n with every member rho(A)-invariant,
/// built by repeated common eigenvectors on quotient modules.
Flag full_flag(const Representation& rep, const Subalgebra& A);

struct FaithfulSubmoduleRun {
  Subspace submodule;
  // Kernel dimension after the seed and after every enlargement; strictly
  // decreasing, ending in 0.
  std::vector<Index> kernel_dims;

  Index enlargements() const { return static_cast<Index>(kernel_dims.size()) - 1; }
};

// Grows an A-invariant subspace on which the action is faithful: seed with
// the first standard basis vector, generate, and while the kernel on the
// submodule is nonzero pick a kernel element, scan the standard basis for
// a witness it does not kill, and enlarge.  Requires the ambient action to
// be faithful on A (else NotFaithful).
FaithfulSubmoduleRun faithful_submodule(const Representation& rep, const Subalgebra& A);

}  // namespace flagstab

#endif
