#ifndef FLAGSTAB_LINALG_HPP
#define FLAGSTAB_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "flagstab/errors.hpp"
#include "flagstab/rational.hpp"

namespace flagstab {

using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

/// Unique reduced row-echelon form; the row space is preserved.
Mat rref(const Mat& m);

/// Pivot columns of the reduced row-echelon form, in increasing order.
std::vector<Index> pivot_columns(const Mat& echelon);

Index rank(const Mat& m);

// A linear subspace of k^n, stored by its canonical basis: the nonzero
// rows of the reduced row-echelon form of any spanning set.  Equality of
// subspaces is therefore plain structural equality.
class Subspace {
 public:
  // Zero subspace of k^n.
  explicit Subspace(Index ambient_dim);
  // Canonicalizes the rows of `spanning` (duplicates and zero rows are fine).
  Subspace(Index ambient_dim, const Mat& spanning);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return basis_.rows(); }
  // dim() x ambient_dim() matrix in reduced row-echelon form, no zero rows.
  const Mat& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim_; }

  bool contains(const Vec& v) const;
  // Coordinates of v with respect to basis(); nullopt when v is outside.
  std::optional<Vec> coordinates_of(const Vec& v) const;
  // Matrix C with C*v = 0 exactly for v in the subspace (rows span the
  // annihilator of the row space under the standard bilinear form).
  Mat membership_conditions() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_.rows() == b.basis_.rows() &&
           a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Index ambient_dim_;
  Mat basis_;
  std::vector<Index> pivots_;
};

/// Span of coordinate vectors, as a canonical Subspace.
Subspace span(const std::vector<Vec>& vectors, Index ambient_dim);
Subspace full_space(Index ambient_dim);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
/// a <= b as sets.
bool subspace_leq(const Subspace& a, const Subspace& b);

/// Exact null space {v : m v = 0}, canonicalized.
Subspace kernel(const Mat& m);
/// One exact solution of m x = rhs, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& rhs);

/// Coefficients of det(t I - m), constant term first (so back() == 1).
/// Faddeev-LeVerrier over the rationals; exact in characteristic zero.
std::vector<Rational> characteristic_polynomial(const Mat& m);

/// All rational eigenvalues with their eigenspaces, sorted by
/// (numerator, denominator) lexicographically.  Found by rational-root
/// testing on the primitive integer characteristic polynomial; the list
/// is empty when the spectrum has no rational point.
std::vector<std::pair<Rational, Subspace>> rational_eigenvalues(const Mat& m);

}  // namespace flagstab

#endif
