#include "flagstab/lie_theorem.hpp"

namespace flagstab {

namespace {

// Action table for the induction: one matrix per basis element of L.  A
// quotient table is only a homomorphism on the subalgebra that leaves the
// chain invariant, so it never passes through the Representation
// constructor; eigenvector_step evaluates it on that subalgebra only.
struct ModuleAction {
  Index module_dim = 0;
  std::vector<Mat> basis_actions;

  Mat of(const Vec& x) const {
    Mat out = Mat::Zero(module_dim, module_dim);
    for (Index i = 0; i < x.size(); ++i) {
      if (x(i) != 0) out += x(i) * basis_actions[static_cast<std::size_t>(i)];
    }
    return out;
  }
};

ModuleAction view_of(const Representation& rep) {
  ModuleAction view{rep.module_dim(), {}};
  for (Index b = 0; b < rep.algebra().dim(); ++b)
    view.basis_actions.push_back(rep.action_of_basis(b));
  return view;
}

bool acts_by_zero(const ModuleAction& action, const Subspace& a) {
  for (Index b = 0; b < a.dim(); ++b) {
    const Mat act = action.of(a.basis().row(b).transpose());
    for (Index i = 0; i < act.rows(); ++i)
      for (Index j = 0; j < act.cols(); ++j)
        if (act(i, j) != 0) return false;
  }
  return true;
}

Subspace derived_subspace(const LieAlgebra& L, const Subspace& a) {
  std::vector<Vec> brackets;
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = i + 1; j < a.dim(); ++j)
      brackets.push_back(bracket(L, a.basis().row(i).transpose(), a.basis().row(j).transpose()));
  return span(brackets, L.dim());
}

// Induction step; `a` is a solvable bracket-closed subspace of L acting
// through `action` on a module of dimension >= 1.
CommonEigenvector eigenvector_step(const ModuleAction& action, const LieAlgebra& L,
                                   const Subspace& a) {
  const Index n = action.module_dim;

  if (acts_by_zero(action, a)) {
    return CommonEigenvector{Vec::Unit(n, 0), Weight(L.dim())};
  }

  // Codimension-one subspace I >= [A,A], extended by basis vectors of A in
  // index order; I is automatically an ideal.  Solvability gives
  // [A,A] != A, so the target dimension is reachable.
  Subspace ideal = derived_subspace(L, a);
  Index outside = -1;
  for (Index b = 0; b < a.dim(); ++b) {
    const Vec u = a.basis().row(b).transpose();
    if (ideal.contains(u)) continue;
    if (ideal.dim() < a.dim() - 1) {
      ideal = subspace_sum(ideal, span({u}, L.dim()));
    } else if (outside < 0) {
      outside = b;
    }
  }
  if (outside < 0 || ideal.dim() != a.dim() - 1)
    throw Error("internal: codimension-one ideal construction failed");
  const Vec z = a.basis().row(outside).transpose();

  const Weight lower = eigenvector_step(action, L, ideal).weight;

  // Joint weight space W = {v : rho(x) v = lower(x) v for all x in I}.
  Mat stacked(ideal.dim() * n, n);
  for (Index b = 0; b < ideal.dim(); ++b) {
    const Vec x = ideal.basis().row(b).transpose();
    Mat shifted = action.of(x);
    const Rational lam = lower(x);
    for (Index i = 0; i < n; ++i) shifted(i, i) -= lam;
    stacked.middleRows(b * n, n) = shifted;
  }
  const Subspace weight_space = kernel(stacked);
  if (weight_space.is_zero()) throw Error("internal: empty joint weight space");

  // W is invariant under all of A by the characteristic-zero argument;
  // restrict rho(z) and look for a rational eigenvalue.
  const Mat act_z = action.of(z);
  Mat restricted(weight_space.dim(), weight_space.dim());
  for (Index i = 0; i < weight_space.dim(); ++i) {
    const Vec image = act_z * weight_space.basis().row(i).transpose();
    const auto coords = weight_space.coordinates_of(image);
    if (!coords) throw Error("internal: weight space is not invariant");
    restricted.col(i) = *coords;
  }
  const auto eigs = rational_eigenvalues(restricted);
  if (eigs.empty())
    throw FieldNotSplit("restricted operator has no rational eigenvalue");
  const Rational mu = eigs.front().first;
  const Vec inner = eigs.front().second.basis().row(0).transpose();
  Vec v = Vec::Zero(n);
  for (Index i = 0; i < weight_space.dim(); ++i)
    v += inner(i) * weight_space.basis().row(i).transpose();

  // Extend the weight to A: decompose each basis vector as i_part + t z.
  Mat decomposition(L.dim(), ideal.dim() + 1);
  for (Index b = 0; b < ideal.dim(); ++b)
    decomposition.col(b) = ideal.basis().row(b).transpose();
  decomposition.col(ideal.dim()) = z;
  std::vector<Rational> values;
  for (Index b = 0; b < a.dim(); ++b) {
    const Vec u = a.basis().row(b).transpose();
    const auto coeffs = solve(decomposition, u);
    if (!coeffs) throw Error("internal: basis vector outside I + <z>");
    const Rational t = (*coeffs)(ideal.dim());
    values.push_back(lower(u - t * z) + t * mu);
  }
  return CommonEigenvector{v, Weight::from_basis_values(a, values)};
}

}  // namespace

CommonEigenvector common_eigenvector(const Representation& rep, const Subalgebra& A) {
  if (rep.module_dim() == 0) throw ZeroModule("module dimension is zero");
  if (!is_solvable(A)) throw NotSolvable("subalgebra is not solvable");
  CommonEigenvector result = eigenvector_step(view_of(rep), A.parent(), A.space());
  // Exactness certificate: rho(x) v = weight(x) v on every basis element.
  for (Index b = 0; b < A.dim(); ++b) {
    const Vec x = A.basis_vector(b);
    if (Vec(rep.action_of(x) * result.vector) != Vec(result.weight(x) * result.vector))
      throw Error("internal: eigenvector certificate failed");
  }
  return result;
}

Flag full_flag(const Representation& rep, const Subalgebra& A) {
  if (rep.module_dim() == 0) throw ZeroModule("module dimension is zero");
  if (!is_solvable(A)) throw NotSolvable("subalgebra is not solvable");
  const LieAlgebra& L = A.parent();
  const Index n = rep.module_dim();
  const ModuleAction ambient_action = view_of(rep);

  std::vector<Subspace> chain{Subspace(n)};
  while (chain.back().dim() < n) {
    const Subspace& current = chain.back();
    // Quotient module on the complement coordinates (the non-pivot columns
    // of the canonical basis of `current`); well defined on the subalgebra
    // because the chain so far is A-invariant.
    std::vector<Index> complement;
    {
      std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
      for (Index p : current.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
      for (Index j = 0; j < n; ++j)
        if (!is_pivot[static_cast<std::size_t>(j)]) complement.push_back(j);
    }
    const Index m = static_cast<Index>(complement.size());

    const auto project = [&](Vec w) {
      for (Index r = 0; r < current.dim(); ++r) {
        const Rational c = w(current.pivots()[static_cast<std::size_t>(r)]);
        if (c != 0) w -= c * current.basis().row(r).transpose();
      }
      Vec out(m);
      for (Index j = 0; j < m; ++j) out(j) = w(complement[static_cast<std::size_t>(j)]);
      return out;
    };

    ModuleAction quotient{m, {}};
    for (Index b = 0; b < L.dim(); ++b) {
      Mat q = Mat::Zero(m, m);
      for (Index j = 0; j < m; ++j) {
        const Vec e = Vec::Unit(n, complement[static_cast<std::size_t>(j)]);
        q.col(j) = project(ambient_action.basis_actions[static_cast<std::size_t>(b)] * e);
      }
      quotient.basis_actions.push_back(std::move(q));
    }

    const Vec vbar = eigenvector_step(quotient, L, A.space()).vector;
    Vec lift = Vec::Zero(n);
    for (Index j = 0; j < m; ++j) lift(complement[static_cast<std::size_t>(j)]) = vbar(j);
    chain.push_back(subspace_sum(current, span({lift}, n)));
    if (chain.back().dim() != current.dim() + 1)
      throw Error("internal: quotient eigenvector did not extend the chain by one");
  }

  Flag flag{n, std::move(chain)};
  if (!is_stabilized(flag, rep, A)) throw Error("internal: flag invariance certificate failed");
  return flag;
}

FaithfulSubmoduleRun faithful_submodule(const Representation& rep, const Subalgebra& A) {
  if (!is_faithful(rep, A)) throw NotFaithful("ambient representation is unfaithful");
  const Index n = rep.module_dim();
  if (n == 0) return FaithfulSubmoduleRun{Subspace(0), {0}};

  Subspace submodule = generated_submodule(rep, A, {Vec::Unit(n, 0)});
  std::vector<Index> kernel_dims;
  for (;;) {
    const Subspace k = action_kernel_on(rep, A, submodule);
    if (!kernel_dims.empty() && k.dim() >= kernel_dims.back())
      throw Error("internal: kernel dimension failed to decrease");
    kernel_dims.push_back(k.dim());
    if (k.is_zero()) break;

    // Witness: a standard basis vector the kernel element does not kill.
    const Vec x = k.basis().row(0).transpose();
    const Mat act = rep.action_of(x);
    Index witness = -1;
    for (Index j = 0; j < n && witness < 0; ++j) {
      for (Index i = 0; i < n; ++i) {
        if (act(i, j) != 0) {
          witness = j;
          break;
        }
      }
    }
    if (witness < 0) throw Error("internal: faithful ambient action yielded a zero operator");

    std::vector<Vec> seeds;
    for (Index i = 0; i < submodule.dim(); ++i)
      seeds.push_back(submodule.basis().row(i).transpose());
    seeds.push_back(Vec::Unit(n, witness));
    submodule = generated_submodule(rep, A, seeds);
  }
  return FaithfulSubmoduleRun{std::move(submodule), std::move(kernel_dims)};
}

}  // namespace flagstab
