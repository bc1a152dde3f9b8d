#include "flagstab/liealg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace flagstab {

namespace {

bool all_zero(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0) return false;
  }
  return true;
}

LieAlgebra::Terms canonical_terms(const LieAlgebra::Terms& terms, Index dim) {
  std::map<Index, Rational> acc;
  for (const auto& [k, c] : terms) {
    if (k < 0 || k >= dim) throw PreconditionViolated("structure constant index out of range");
    acc[k] += c;
  }
  LieAlgebra::Terms out;
  for (const auto& [k, c] : acc) {
    if (c != 0) out.emplace_back(k, c);
  }
  return out;
}

}  // namespace

LieAlgebra::LieAlgebra(Index dim, std::vector<std::string> basis_names, Table table)
    : dim_(dim), basis_names_(std::move(basis_names)), table_(std::move(table)) {
  if (dim < 0) throw DimensionMismatch("negative dimension");
  if (basis_names_.empty()) {
    for (Index i = 0; i < dim; ++i) basis_names_.push_back("x" + std::to_string(i));
  }
  if (static_cast<Index>(basis_names_.size()) != dim)
    throw DimensionMismatch("basis name count != dim");
  table_.resize(static_cast<std::size_t>(dim));
  for (auto& row : table_) row.resize(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          canonical_terms(table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], dim);
}

LieAlgebra LieAlgebra::unchecked(Index dim, std::vector<std::string> basis_names, Table table) {
  return LieAlgebra(dim, std::move(basis_names), std::move(table));
}

LieAlgebra LieAlgebra::checked(Index dim, std::vector<std::string> basis_names, Table table) {
  LieAlgebra L(dim, std::move(basis_names), std::move(table));
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j <= i; ++j) {
      const Vec lhs = L.basis_bracket(i, j);
      const Vec rhs = -L.basis_bracket(j, i);
      if (lhs != rhs) {
        std::ostringstream os;
        os << "antisymmetry violated at (" << i << "," << j << ")";
        throw PreconditionViolated(os.str());
      }
    }
  }
  return L;
}

Vec LieAlgebra::basis_bracket(Index i, Index j) const {
  Vec out = Vec::Zero(dim_);
  for (const auto& [k, c] : table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
    out(k) += c;
  return out;
}

Vec bracket(const LieAlgebra& L, const Vec& x, const Vec& y) {
  if (x.size() != L.dim() || y.size() != L.dim())
    throw DimensionMismatch("bracket: coordinate length != dim");
  Vec out = Vec::Zero(L.dim());
  for (Index i = 0; i < L.dim(); ++i) {
    if (x(i) == 0) continue;
    for (Index j = 0; j < L.dim(); ++j) {
      if (y(j) == 0) continue;
      const Rational scale = x(i) * y(j);
      for (const auto& [k, c] :
           L.structure_constants()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        out(k) += scale * c;
    }
  }
  return out;
}

Report verify(const LieAlgebra& L) {
  Report report;
  const Index n = L.dim();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j <= i; ++j) {
      if (L.basis_bracket(i, j) != Vec(-L.basis_bracket(j, i))) {
        std::ostringstream os;
        os << "antisymmetry violated at (" << j << "," << i << ")";
        report.fail(os.str());
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      for (Index l = j + 1; l < n; ++l) {
        const Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j), el = Vec::Unit(n, l);
        const Vec jac = bracket(L, bracket(L, ei, ej), el) +
                        bracket(L, bracket(L, ej, el), ei) +
                        bracket(L, bracket(L, el, ei), ej);
        if (!all_zero(jac)) {
          std::ostringstream os;
          os << "Jacobi identity violated at (" << i << "," << j << "," << l << ")";
          report.fail(os.str());
        }
      }
    }
  }
  return report;
}

Subalgebra::Subalgebra(const LieAlgebra& parent, Subspace space)
    : parent_(&parent), space_(std::move(space)) {
  if (space_.ambient_dim() != parent.dim())
    throw DimensionMismatch("subalgebra ambient != parent dim");
  for (Index i = 0; i < space_.dim(); ++i) {
    for (Index j = i + 1; j < space_.dim(); ++j) {
      const Vec br = bracket(parent, basis_vector(i), basis_vector(j));
      if (!space_.contains(br)) throw PreconditionViolated("subspace is not bracket-closed");
    }
  }
}

Subalgebra whole_algebra(const LieAlgebra& L) { return Subalgebra(L, full_space(L.dim())); }

Representation::Representation(const LieAlgebra& algebra, Index module_dim,
                               std::vector<Mat> action)
    : algebra_(&algebra), module_dim_(module_dim), action_(std::move(action)) {
  if (module_dim < 0) throw DimensionMismatch("negative module dimension");
  if (static_cast<Index>(action_.size()) != algebra.dim())
    throw DimensionMismatch("one action matrix per basis element required");
  for (const Mat& a : action_) {
    if (a.rows() != module_dim || a.cols() != module_dim)
      throw DimensionMismatch("action matrix has wrong shape");
  }
  for (Index i = 0; i < algebra.dim(); ++i) {
    for (Index j = i + 1; j < algebra.dim(); ++j) {
      const Mat lhs = action_of(algebra.basis_bracket(i, j));
      const Mat rhs = action_of_basis(i) * action_of_basis(j) -
                      action_of_basis(j) * action_of_basis(i);
      if (lhs != rhs) throw PreconditionViolated("action does not respect the bracket");
    }
  }
}

Mat Representation::action_of(const Vec& x) const {
  if (x.size() != algebra_->dim()) throw DimensionMismatch("coordinate length != dim");
  Mat out = Mat::Zero(module_dim_, module_dim_);
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) != 0) out += x(i) * action_[static_cast<std::size_t>(i)];
  }
  return out;
}

Weight Weight::from_basis_values(const Subspace& on, const std::vector<Rational>& values) {
  if (static_cast<Index>(values.size()) != on.dim())
    throw DimensionMismatch("one value per basis row required");
  Vec covector = Vec::Zero(on.ambient_dim());
  for (std::size_t i = 0; i < values.size(); ++i) covector(on.pivots()[i]) = values[i];
  return Weight(covector);
}

Rational Weight::operator()(const Vec& x) const {
  if (x.size() != covector_.size()) throw DimensionMismatch("weight argument length");
  Rational acc(0);
  for (Index i = 0; i < x.size(); ++i) acc += covector_(i) * x(i);
  return acc;
}

Subalgebra subalgebra_closure(const LieAlgebra& L, const std::vector<Vec>& generators) {
  Subspace current = span(generators, L.dim());
  for (;;) {
    std::vector<Vec> extended;
    for (Index i = 0; i < current.dim(); ++i) extended.push_back(current.basis().row(i).transpose());
    for (Index i = 0; i < current.dim(); ++i) {
      for (Index j = i + 1; j < current.dim(); ++j) {
        extended.push_back(bracket(L, current.basis().row(i).transpose(),
                                   current.basis().row(j).transpose()));
      }
    }
    Subspace next = span(extended, L.dim());
    if (next.dim() == current.dim()) break;
    current = std::move(next);
  }
  return Subalgebra(L, current);
}

namespace {

Subspace derived_of(const LieAlgebra& L, const Subspace& a) {
  std::vector<Vec> brackets;
  for (Index i = 0; i < a.dim(); ++i) {
    for (Index j = i + 1; j < a.dim(); ++j) {
      brackets.push_back(bracket(L, a.basis().row(i).transpose(), a.basis().row(j).transpose()));
    }
  }
  return span(brackets, L.dim());
}

}  // namespace

std::vector<Subspace> derived_series(const Subalgebra& A) {
  const LieAlgebra& L = A.parent();
  std::vector<Subspace> series{A.space()};
  if (A.space().is_zero()) return series;
  for (;;) {
    const Subspace next = derived_of(L, series.back());
    series.push_back(next);
    if (next.is_zero() || next == series[series.size() - 2]) break;
  }
  return series;
}

bool is_solvable(const Subalgebra& A) { return derived_series(A).back().is_zero(); }

Subspace action_kernel(const Representation& rep, const Subalgebra& A) {
  if (&rep.algebra() != &A.parent() && rep.algebra().dim() != A.parent().dim())
    throw DimensionMismatch("subalgebra does not live in the representation's algebra");
  const Index d = A.dim();
  const Index n = rep.module_dim();
  // Unknowns: coefficients over A's basis; conditions: rho(sum c_b u_b) = 0.
  Mat system(n * n, d);
  for (Index b = 0; b < d; ++b) {
    const Mat act = rep.action_of(A.basis_vector(b));
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) system(r * n + c, b) = act(r, c);
  }
  const Subspace coeff_kernel = kernel(system);
  std::vector<Vec> vectors;
  for (Index i = 0; i < coeff_kernel.dim(); ++i) {
    Vec x = Vec::Zero(A.parent().dim());
    for (Index b = 0; b < d; ++b) x += coeff_kernel.basis()(i, b) * A.basis_vector(b);
    vectors.push_back(x);
  }
  return span(vectors, A.parent().dim());
}

Subspace action_kernel_on(const Representation& rep, const Subalgebra& A, const Subspace& W) {
  if (W.ambient_dim() != rep.module_dim()) throw DimensionMismatch("W ambient != module dim");
  const Index d = A.dim();
  const Index n = rep.module_dim();
  Mat system(W.dim() * n, d);
  for (Index b = 0; b < d; ++b) {
    const Mat act = rep.action_of(A.basis_vector(b));
    for (Index w = 0; w < W.dim(); ++w)
      system.block(w * n, b, n, 1) = act * W.basis().row(w).transpose();
  }
  const Subspace coeff_kernel = kernel(system);
  std::vector<Vec> vectors;
  for (Index i = 0; i < coeff_kernel.dim(); ++i) {
    Vec x = Vec::Zero(A.parent().dim());
    for (Index b = 0; b < d; ++b) x += coeff_kernel.basis()(i, b) * A.basis_vector(b);
    vectors.push_back(x);
  }
  return span(vectors, A.parent().dim());
}

bool is_faithful(const Representation& rep, const Subalgebra& A) {
  return action_kernel(rep, A).is_zero();
}

Subspace generated_submodule(const Representation& rep, const Subalgebra& A,
                             const std::vector<Vec>& seeds) {
  Subspace current = span(seeds, rep.module_dim());
  for (;;) {
    std::vector<Vec> extended;
    for (Index i = 0; i < current.dim(); ++i) extended.push_back(current.basis().row(i).transpose());
    for (Index b = 0; b < A.dim(); ++b) {
      const Mat act = rep.action_of(A.basis_vector(b));
      for (Index i = 0; i < current.dim(); ++i)
        extended.push_back(act * current.basis().row(i).transpose());
    }
    Subspace next = span(extended, rep.module_dim());
    if (next.dim() == current.dim()) break;
    current = std::move(next);
  }
  return current;
}

LieAlgebra general_linear(Index n) {
  const Index dim = n * n;
  std::vector<std::string> names;
  LieAlgebra::Table table(static_cast<std::size_t>(dim),
                          std::vector<LieAlgebra::Terms>(static_cast<std::size_t>(dim)));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      names.push_back("E" + std::to_string(a) + std::to_string(b));
  // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        for (Index d = 0; d < n; ++d) {
          LieAlgebra::Terms terms;
          if (b == c) terms.emplace_back(a * n + d, Rational(1));
          if (d == a) terms.emplace_back(c * n + b, Rational(-1));
          table[static_cast<std::size_t>(a * n + b)][static_cast<std::size_t>(c * n + d)] =
              std::move(terms);
        }
      }
    }
  }
  return LieAlgebra::checked(dim, std::move(names), std::move(table));
}

Representation natural_representation(const LieAlgebra& gl, Index n) {
  if (gl.dim() != n * n) throw DimensionMismatch("algebra is not gl_n");
  std::vector<Mat> action;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      Mat unit = Mat::Zero(n, n);
      unit(a, b) = 1;
      action.push_back(std::move(unit));
    }
  }
  return Representation(gl, n, std::move(action));
}

}  // namespace flagstab
