#ifndef FLAGSTAB_FLAGS_HPP
#define FLAGSTAB_FLAGS_HPP

#include <vector>

#include "flagstab/liealg.hpp"
#include "flagstab/linalg.hpp"
#include "flagstab/report.hpp"

namespace flagstab {

// A chain of subspaces 0 = F_0 < F_1 < ... < F_m = k^n, strictly
// increasing by inclusion.  "Full" means every successive quotient has
// dimension one (so m = n).
struct Flag {
  Index ambient_dim = 0;
  std::vector<Subspace> chain;

  Index length() const { return static_cast<Index>(chain.size()); }
};

/// Builds a flag from arbitrary chain members; inserts 0 and the full
/// space when missing, sorts by inclusion, deduplicates.  Throws NotAChain
/// when the members are not totally ordered.
Flag make_flag(Index ambient_dim, std::vector<Subspace> members);

/// The standard coordinate flag <e_1> < <e_1,e_2> < ... in k^n.
Flag standard_flag(Index n);

/// Structural validity: starts at 0, ends at the full space, strictly
/// increasing.  Used as the InvalidFlag gate by the operations below.
bool is_valid_flag(const Flag& f);

// Finite set of subspaces to be tested against the generalized-flag
// definition; no invariant is enforced at construction.
struct GeneralizedFlagCheckInput {
  Index ambient_dim = 0;
  std::vector<Subspace> subspaces;
};

/// Checks the definition over a finite ambient: total order by inclusion,
/// immediate neighbours, and the cover condition (0 and the full space
/// present, consecutive members distinct, every probed nonzero vector in
/// exactly one successor gap).
Report is_generalized_flag(const GeneralizedFlagCheckInput& input);

/// True iff all successive quotients are one-dimensional.
bool is_maximal(const Flag& f);
bool is_maximal(const GeneralizedFlagCheckInput& input);

/// {x in ambient : rho(x) F_i <= F_i for all i}, solved as one exact
/// linear system; the result is bracket-closed.
Subalgebra stabilizer(const Flag& f, const Representation& rep, const Subalgebra& ambient);

bool is_stabilized(const Flag& f, const Representation& rep, const Subalgebra& A);

/// Intersects every chain member with W, re-expresses the survivors in
/// the coordinates of W's canonical basis, deduplicates preserving order.
/// Restricting a maximal chain yields a full flag of W.
Flag restrict_chain(const std::vector<Subspace>& chain, const Subspace& W);

}  // namespace flagstab

#endif
