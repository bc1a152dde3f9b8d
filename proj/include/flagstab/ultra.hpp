#ifndef FLAGSTAB_ULTRA_HPP
#define FLAGSTAB_ULTRA_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "flagstab/flags.hpp"
#include "flagstab/linalg.hpp"
#include "flagstab/report.hpp"

// Filters, ultrafilters, ultraproducts and the flag machinery they carry,
// all over finite ground sets where every claim can be checked by
// enumeration.  Subsets of the ground set are bitsets.

namespace flagstab::ultra {

using Bitset = std::uint32_t;

struct GroundSet {
  explicit GroundSet(int size);

  int size = 1;
  Bitset full_mask() const { return (Bitset{1} << size) - 1; }
};

// A bare family of subsets; may fail every filter axiom.  Members are kept
// sorted (as bitsets) so serialization and comparison are deterministic.
struct SetFamily {
  GroundSet ground;
  std::set<Bitset> members;
};

class Ultrafilter {
 public:
  /// All supersets of {point}; the only kind of ultrafilter a finite
  /// ground set admits.
  static Ultrafilter principal(GroundSet ground, int point);
  /// Validates the full axioms (filter plus the T-or-complement
  /// dichotomy, exhaustively) before accepting the family.
  static Ultrafilter from_family(const SetFamily& family);

  const GroundSet& ground() const { return ground_; }
  const std::set<Bitset>& members() const { return members_; }
  bool contains(Bitset s) const { return members_.count(s) > 0; }
  /// The unique point lying in every member.
  int principal_point() const;

 private:
  Ultrafilter(GroundSet ground, std::set<Bitset> members)
      : ground_(ground), members_(std::move(members)) {}

  GroundSet ground_;
  std::set<Bitset> members_;
};

/// Every intersection of a nonempty subcollection is nonempty (checked
/// exhaustively; throws CapExceeded beyond 20 members).
bool has_fip(const SetFamily& family);

/// {D : some finite intersection of members is contained in D}; the least
/// filter containing the family.  Throws NoFIP.
SetFamily generate_filter(const SetFamily& family);

bool is_filter(const SetFamily& family);
/// Filter axioms plus: exactly one of T, X-T belongs, for every subset T.
bool is_ultrafilter(const SetFamily& family);

/// Exactly ground.size ultrafilters, the principal ones.
std::vector<Ultrafilter> enumerate_ultrafilters(GroundSet ground);

/// Index of the unique part belonging to the ultrafilter.  Parts must be
/// pairwise disjoint with union in the ultrafilter (PreconditionViolated).
std::size_t partition_selects_one(const Ultrafilter& uf, const std::vector<Bitset>& parts);

// ---------------------------------------------------------------------------
// Finite structures and ultraproducts.  Two signatures are shipped: finite
// abelian groups (add/neg) and finite vector spaces over a prime field
// (add/neg/scalar multiples).  Element 0 is always the zero.

class FiniteStructure {
 public:
  enum class Kind { AbelianGroup, VectorSpace };

  static FiniteStructure cyclic(int n);
  static FiniteStructure direct_sum(const FiniteStructure& a, const FiniteStructure& b);
  static FiniteStructure vector_space(int prime, int dim);

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  int prime() const { return prime_; }
  int size() const { return size_; }

  int add(int x, int y) const;
  int neg(int x) const;
  int smul(int scalar, int x) const;

  bool same_signature(const FiniteStructure& other) const {
    return kind_ == other.kind_ && prime_ == other.prime_;
  }

  /// Elements of the smallest subsystem containing `seed`, sorted.
  std::vector<int> generated_subsystem(const std::vector<int>& seed) const;

  /// Assembles a structure from explicit operation tables (used for
  /// ultraproduct quotients); element 0 must be the zero.
  static FiniteStructure from_tables(std::string name, Kind kind, int prime, int size,
                                     std::vector<std::vector<int>> add, std::vector<int> neg,
                                     std::vector<std::vector<int>> smul);

 private:
  FiniteStructure() = default;

  std::string name_;
  Kind kind_ = Kind::AbelianGroup;
  int prime_ = 0;  // scalar field for vector spaces, 0 for plain groups
  int size_ = 1;
  std::vector<std::vector<int>> add_;
  std::vector<int> neg_;
  std::vector<std::vector<int>> smul_;  // per scalar, vector spaces only
};

/// The structures the Malcev suite runs over.
std::vector<FiniteStructure> shipped_structures();

struct UltraproductResult {
  FiniteStructure quotient;
  std::vector<std::vector<int>> class_reps;  // one representative tuple per class
  std::vector<int> iso;                      // class -> element of the principal factor
  Report report;                             // well-definedness + isomorphism certificate
};

/// Quotient of the cartesian product by agreement on an ultrafilter-large
/// set.  Factors must share a signature (SignatureMismatch); the tuple
/// enumeration is capped (CapExceeded).
UltraproductResult ultraproduct_classes(const std::vector<FiniteStructure>& factors,
                                        const Ultrafilter& uf);

struct MalcevEmbedding {
  GroundSet ground;                           // X = nonempty subsets of A
  std::vector<Bitset> index_subsets;          // ground point -> subset of A
  SetFamily cones;                            // X_alpha = {beta : alpha subseteq beta}
  Ultrafilter uf;                             // principal at the top subset
  std::vector<std::vector<int>> subsystems;   // per point, elements of A_alpha
  std::vector<std::vector<int>> psi;          // per element of A, a tuple over X
  Report report;
};

/// Builds the index set of nonempty subsets, the cones, an ultrafilter
/// containing them, and the map psi_x(alpha) = x if x in A_alpha else
/// d(alpha); verifies psi is an injective homomorphism.  Throws SizeCap
/// when |A| > 4 (the index set is exponential).
MalcevEmbedding malcev_embedding(const FiniteStructure& A);

/// The homomorphism/injectivity certificate for an arbitrary candidate
/// map, so corrupted maps can be shown to fail.
Report verify_malcev_map(const FiniteStructure& A, const MalcevEmbedding& emb,
                         const std::vector<std::vector<int>>& candidate_psi);

// ---------------------------------------------------------------------------
// Flag ultraproducts: the function-q viewpoint, with one full flag per
// ground point.  A principal ultrafilter realizes an index function as a
// subspace of the factor at its point.

struct FlagIndexFunction {
  std::vector<int> values;  // 0 <= values[alpha] <= dim of factor alpha
};

struct UltraFlagSystem {
  GroundSet ground;
  std::vector<Flag> factor_flags;
  Ultrafilter uf;

  std::vector<int> dims() const;
};

/// Standard full flags of the given dimensions under the principal
/// ultrafilter at `point`.
UltraFlagSystem standard_ultraflag(const std::vector<Index>& dims, int point);

FlagIndexFunction q_min(const std::vector<int>& dims);
FlagIndexFunction q_max(const std::vector<int>& dims);

enum class Comparison { Less, Equal, Greater };

/// Partition X into {p>q}, {p=q}, {p<q}; exactly one part is large.
Comparison uf_compare(const FlagIndexFunction& p, const FlagIndexFunction& q,
                      const Ultrafilter& uf);

/// Componentwise +-1 clamped at the bounds; AtBoundary at the extremes of
/// the ultrafilter order.
FlagIndexFunction uf_successor(const FlagIndexFunction& q, const std::vector<int>& dims,
                               const Ultrafilter& uf);
FlagIndexFunction uf_predecessor(const FlagIndexFunction& q, const std::vector<int>& dims,
                                 const Ultrafilter& uf);

/// An element of the product of the factor modules: one vector per point.
using ProductVector = std::vector<Vec>;

/// Per point with a nonzero entry, the minimal flag level containing it;
/// zero elsewhere.  Throws ZeroVector when v is uf-equivalent to 0.
FlagIndexFunction uf_locate(const ProductVector& v, const UltraFlagSystem& sys);

/// The subspace an index-function class stands for: the factor at the
/// principal point, at level q(point).
Subspace realized(const UltraFlagSystem& sys, const FlagIndexFunction& q);

/// Checks, over all index functions and probe vectors: factor flags full,
/// the uf order matches realized inclusion, every non-extreme class has
/// immediate neighbours with quotient dimension one, and every nonzero
/// probe lands in exactly one successor gap.
Report verify_ultraflag(const UltraFlagSystem& sys);

}  // namespace flagstab::ultra

#endif
