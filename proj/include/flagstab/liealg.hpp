#ifndef FLAGSTAB_LIEALG_HPP
#define FLAGSTAB_LIEALG_HPP

#include <string>
#include <utility>
#include <vector>

#include "flagstab/linalg.hpp"
#include "flagstab/report.hpp"

namespace flagstab {

// Finite-dimensional Lie algebra over Q, presented by structure constants
// [x_i, x_j] = sum_k c_{ij}^k x_k.  The table is stored sparsely: one list
// of (k, coefficient) terms per basis pair.
//
// `checked` rejects tables that violate antisymmetry; Jacobi failures are
// only surfaced through verify() so that deliberately broken fixtures can
// be loaded for negative tests (via `unchecked`).
class LieAlgebra {
 public:
  using Terms = std::vector<std::pair<Index, Rational>>;
  using Table = std::vector<std::vector<Terms>>;

  static LieAlgebra checked(Index dim, std::vector<std::string> basis_names, Table table);
  static LieAlgebra unchecked(Index dim, std::vector<std::string> basis_names, Table table);

  Index dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  const Table& structure_constants() const { return table_; }

  /// [x_i, x_j] as a dense coordinate vector.
  Vec basis_bracket(Index i, Index j) const;

 private:
  LieAlgebra(Index dim, std::vector<std::string> basis_names, Table table);

  Index dim_;
  std::vector<std::string> basis_names_;
  Table table_;
};

/// [x, y] for coordinate vectors, bilinear in the structure constants.
Vec bracket(const LieAlgebra& L, const Vec& x, const Vec& y);

/// Lists every violated antisymmetry pair and Jacobi triple.
Report verify(const LieAlgebra& L);

// A bracket-closed subspace of a fixed parent algebra.  Closure is checked
// eagerly at construction; all downstream math assumes it.  The parent is
// held by reference and must outlive the subalgebra.
class Subalgebra {
 public:
  Subalgebra(const LieAlgebra& parent, Subspace space);

  const LieAlgebra& parent() const { return *parent_; }
  const Subspace& space() const { return space_; }
  Index dim() const { return space_.dim(); }
  Vec basis_vector(Index i) const { return space_.basis().row(i).transpose(); }

 private:
  const LieAlgebra* parent_;
  Subspace space_;
};

Subalgebra whole_algebra(const LieAlgebra& L);

// A linear action of the algebra on k^module_dim, one matrix per basis
// element.  The constructor checks the homomorphism identity
// rho([x_i,x_j]) = rho(x_i) rho(x_j) - rho(x_j) rho(x_i) on all pairs.
class Representation {
 public:
  Representation(const LieAlgebra& algebra, Index module_dim, std::vector<Mat> action);

  const LieAlgebra& algebra() const { return *algebra_; }
  Index module_dim() const { return module_dim_; }
  const Mat& action_of_basis(Index i) const { return action_[static_cast<std::size_t>(i)]; }
  Mat action_of(const Vec& x) const;

 private:
  const LieAlgebra* algebra_;
  Index module_dim_;
  std::vector<Mat> action_;
};

// Linear functional on (a subalgebra of) the algebra's coordinate space,
// stored as a covector so evaluation is a dot product.
class Weight {
 public:
  explicit Weight(Index algebra_dim) : covector_(Vec::Zero(algebra_dim)) {}
  explicit Weight(Vec covector) : covector_(std::move(covector)) {}

  /// Values on the subspace's canonical basis rows, extended by zero off
  /// the pivot coordinates; linear on the subspace by construction.
  static Weight from_basis_values(const Subspace& on, const std::vector<Rational>& values);

  Rational operator()(const Vec& x) const;
  const Vec& covector() const { return covector_; }

 private:
  Vec covector_;
};

/// Smallest bracket-closed subspace containing the generators
/// (span-then-bracket until the dimension stabilizes).
Subalgebra subalgebra_closure(const LieAlgebra& L, const std::vector<Vec>& generators);

/// A >= [A,A] >= [[A,A],[A,A]] >= ... until stabilization; the final term
/// is appended once when the series stalls above zero.
std::vector<Subspace> derived_series(const Subalgebra& A);

bool is_solvable(const Subalgebra& A);

/// {x in A : rho(x) = 0}, as a subspace of the parent's coordinate space.
Subspace action_kernel(const Representation& rep, const Subalgebra& A);

/// {x in A : rho(x) w = 0 for all w in W}: the kernel of the action
/// restricted to a submodule.
Subspace action_kernel_on(const Representation& rep, const Subalgebra& A, const Subspace& W);

bool is_faithful(const Representation& rep, const Subalgebra& A);

/// Smallest A-invariant subspace of the module containing the seeds.
Subspace generated_submodule(const Representation& rep, const Subalgebra& A,
                             const std::vector<Vec>& seeds);

/// gl_n with basis E_{ab} at index a*n + b, brackets from matrix-unit
/// commutators.
LieAlgebra general_linear(Index n);
/// The natural action of general_linear(n) on k^n.
Representation natural_representation(const LieAlgebra& gl, Index n);

}  // namespace flagstab

#endif
