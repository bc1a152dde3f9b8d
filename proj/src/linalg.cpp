#include "flagstab/linalg.hpp"

#include <algorithm>
#include <set>

namespace flagstab {

namespace {

bool all_zero(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0) return false;
  }
  return true;
}

}  // namespace

Mat rref(const Mat& m) {
  Mat a = m;
  const Index rows = a.rows(), cols = a.cols();
  Index r = 0;
  for (Index col = 0; col < cols && r < rows; ++col) {
    Index pivot = -1;
    for (Index i = r; i < rows; ++i) {
      if (a(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) a.row(pivot).swap(a.row(r));
    const Rational inv = Rational(1) / a(r, col);
    a.row(r) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, col) == 0) continue;
      a.row(i) -= a(i, col) * a.row(r);
    }
    ++r;
  }
  return a;
}

std::vector<Index> pivot_columns(const Mat& echelon) {
  std::vector<Index> pivots;
  for (Index i = 0; i < echelon.rows(); ++i) {
    for (Index j = 0; j < echelon.cols(); ++j) {
      if (echelon(i, j) != 0) {
        pivots.push_back(j);
        break;
      }
    }
  }
  return pivots;
}

Index rank(const Mat& m) { return static_cast<Index>(pivot_columns(rref(m)).size()); }

Subspace::Subspace(Index ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {
  if (ambient_dim < 0) throw DimensionMismatch("negative ambient dimension");
}

Subspace::Subspace(Index ambient_dim, const Mat& spanning) : ambient_dim_(ambient_dim) {
  if (ambient_dim < 0) throw DimensionMismatch("negative ambient dimension");
  if (spanning.rows() > 0 && spanning.cols() != ambient_dim)
    throw DimensionMismatch("spanning rows have wrong length");
  Mat echelon = rref(spanning.cols() == ambient_dim ? spanning : Mat(0, ambient_dim));
  pivots_ = pivot_columns(echelon);
  basis_ = echelon.topRows(static_cast<Index>(pivots_.size()));
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("vector length != ambient");
  Vec w = v;
  for (Index i = 0; i < basis_.rows(); ++i) {
    const Rational c = w(pivots_[static_cast<std::size_t>(i)]);
    if (c != 0) w -= c * basis_.row(i).transpose();
  }
  return all_zero(w);
}

std::optional<Vec> Subspace::coordinates_of(const Vec& v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("vector length != ambient");
  Vec coords(dim());
  Vec w = v;
  for (Index i = 0; i < basis_.rows(); ++i) {
    coords(i) = w(pivots_[static_cast<std::size_t>(i)]);
    if (coords(i) != 0) w -= coords(i) * basis_.row(i).transpose();
  }
  if (!all_zero(w)) return std::nullopt;
  return coords;
}

Mat Subspace::membership_conditions() const {
  // v lies in the row space of basis_ iff it annihilates the null space
  // of basis_ (the standard bilinear form is nondegenerate over Q).
  return kernel(basis_).basis();
}

Subspace span(const std::vector<Vec>& vectors, Index ambient_dim) {
  Mat rows(static_cast<Index>(vectors.size()), ambient_dim);
  for (Index i = 0; i < rows.rows(); ++i) {
    const Vec& v = vectors[static_cast<std::size_t>(i)];
    if (v.size() != ambient_dim) throw DimensionMismatch("span: vector length != ambient");
    rows.row(i) = v.transpose();
  }
  return Subspace(ambient_dim, rows);
}

Subspace full_space(Index ambient_dim) {
  return Subspace(ambient_dim, Mat::Identity(ambient_dim, ambient_dim));
}

namespace {

Mat vstack(const Mat& top, const Mat& bottom) {
  Mat out(top.rows() + bottom.rows(), std::max(top.cols(), bottom.cols()));
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

}  // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("sum: ambient mismatch");
  return Subspace(a.ambient_dim(), vstack(a.basis(), b.basis()));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("intersect: ambient mismatch");
  return kernel(vstack(a.membership_conditions(), b.membership_conditions()));
}

bool subspace_leq(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("leq: ambient mismatch");
  for (Index i = 0; i < a.basis().rows(); ++i) {
    if (!b.contains(a.basis().row(i).transpose())) return false;
  }
  return true;
}

Subspace kernel(const Mat& m) {
  const Index n = m.cols();
  const Mat echelon = rref(m);
  const std::vector<Index> pivots = pivot_columns(echelon);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  Mat rows(n - static_cast<Index>(pivots.size()), n);
  Index out = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vec v = Vec::Zero(n);
    v(f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v(pivots[r]) = -echelon(static_cast<Index>(r), f);
    }
    rows.row(out++) = v.transpose();
  }
  return Subspace(n, rows);
}

std::optional<Vec> solve(const Mat& m, const Vec& rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("solve: rhs length != rows");
  const Index n = m.cols();
  Mat aug(m.rows(), n + 1);
  aug.leftCols(n) = m;
  aug.col(n) = rhs;
  const Mat echelon = rref(aug);
  const std::vector<Index> pivots = pivot_columns(echelon);
  Vec x = Vec::Zero(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == n) return std::nullopt;  // a row of the form [0 ... 0 | 1]
    x(pivots[r]) = echelon(static_cast<Index>(r), n);
  }
  return x;
}

std::vector<Rational> characteristic_polynomial(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("characteristic polynomial of non-square");
  const Index n = m.rows();
  // Faddeev-LeVerrier: the only divisions are by the integers 1..n.
  std::vector<Rational> coeff(static_cast<std::size_t>(n) + 1, Rational(0));
  coeff[static_cast<std::size_t>(n)] = 1;
  Mat acc = Mat::Identity(n, n);
  for (Index k = 1; k <= n; ++k) {
    acc = m * acc;
    Rational trace(0);
    for (Index i = 0; i < n; ++i) trace += acc(i, i);
    const Rational c = -trace / Rational(k);
    coeff[static_cast<std::size_t>(n - k)] = c;
    for (Index i = 0; i < n; ++i) acc(i, i) += c;
  }
  return coeff;
}

namespace {

std::vector<Integer> positive_divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> divs;
  for (Integer d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      divs.push_back(d);
      if (d * d != v) divs.push_back(v / d);
    }
  }
  return divs;
}

Rational evaluate(const std::vector<Rational>& coeff, const Rational& t) {
  Rational acc(0);
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * t + *it;
  return acc;
}

}  // namespace

std::vector<std::pair<Rational, Subspace>> rational_eigenvalues(const Mat& m) {
  const std::vector<Rational> poly = characteristic_polynomial(m);
  const Index n = m.rows();

  // Primitive integer form of the characteristic polynomial.
  Integer lcm_den = 1;
  for (const Rational& c : poly) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  std::vector<Integer> ipoly;
  ipoly.reserve(poly.size());
  for (const Rational& c : poly) ipoly.push_back(numerator(c) * (lcm_den / denominator(c)));
  Integer content = 0;
  for (const Integer& a : ipoly) content = boost::multiprecision::gcd(content, a);
  if (content > 1) {
    for (Integer& a : ipoly) a /= content;
  }

  std::set<Rational> roots;
  std::size_t low = 0;
  while (low + 1 < ipoly.size() && ipoly[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));

  if (low + 1 < ipoly.size()) {
    const Integer constant = ipoly[low];
    const Integer leading = ipoly.back();
    for (const Integer& p : positive_divisors(constant)) {
      for (const Integer& q : positive_divisors(leading)) {
        if (boost::multiprecision::gcd(p, q) != 1) continue;
        for (int sign : {1, -1}) {
          const Rational cand(sign > 0 ? p : Integer(-p), q);
          if (evaluate(poly, cand) == 0) roots.insert(cand);
        }
      }
    }
  }

  std::vector<std::pair<Rational, Subspace>> out;
  for (const Rational& lambda : roots) {
    Mat shifted = m;
    for (Index i = 0; i < n; ++i) shifted(i, i) -= lambda;
    Subspace space = kernel(shifted);
    if (space.dim() > 0) out.emplace_back(lambda, std::move(space));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (numerator(a.first) != numerator(b.first)) return numerator(a.first) < numerator(b.first);
    return denominator(a.first) < denominator(b.first);
  });
  return out;
}

}  // namespace flagstab
