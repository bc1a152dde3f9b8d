#include "flagstab/flags.hpp"

#include <algorithm>
#include <sstream>

namespace flagstab {

namespace {

// Total-order sort by inclusion; throws NotAChain on an incomparable pair.
std::vector<Subspace> sort_chain(std::vector<Subspace> members) {
  std::sort(members.begin(), members.end(),
            [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    if (!subspace_leq(members[i], members[i + 1]))
      throw NotAChain("subspaces are not totally ordered by inclusion");
  }
  return members;
}

}  // namespace

Flag make_flag(Index ambient_dim, std::vector<Subspace> members) {
  for (const Subspace& s : members) {
    if (s.ambient_dim() != ambient_dim) throw DimensionMismatch("flag member ambient mismatch");
  }
  members.push_back(Subspace(ambient_dim));
  members.push_back(full_space(ambient_dim));
  members = sort_chain(std::move(members));
  std::vector<Subspace> chain;
  for (auto& s : members) {
    if (chain.empty() || !(chain.back() == s)) chain.push_back(std::move(s));
  }
  return Flag{ambient_dim, std::move(chain)};
}

Flag standard_flag(Index n) {
  std::vector<Subspace> members;
  for (Index d = 1; d < n; ++d) {
    Mat rows = Mat::Zero(d, n);
    for (Index i = 0; i < d; ++i) rows(i, i) = 1;
    members.emplace_back(n, rows);
  }
  return make_flag(n, std::move(members));
}

bool is_valid_flag(const Flag& f) {
  if (f.chain.empty()) return false;
  if (!f.chain.front().is_zero()) return false;
  if (!f.chain.back().is_full()) return false;
  for (const Subspace& s : f.chain) {
    if (s.ambient_dim() != f.ambient_dim) return false;
  }
  for (std::size_t i = 0; i + 1 < f.chain.size(); ++i) {
    if (!subspace_leq(f.chain[i], f.chain[i + 1])) return false;
    if (f.chain[i].dim() >= f.chain[i + 1].dim()) return false;
  }
  return true;
}

Report is_generalized_flag(const GeneralizedFlagCheckInput& input) {
  Report report;
  std::vector<Subspace> members = input.subspaces;
  for (const Subspace& s : members) {
    if (s.ambient_dim() != input.ambient_dim) {
      report.fail("member has wrong ambient dimension");
      return report;
    }
  }
  // Set semantics: collapse duplicates.
  std::sort(members.begin(), members.end(),
            [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) {
    report.fail("empty set of subspaces");
    return report;
  }

  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    if (members[i].dim() == members[i + 1].dim() || !subspace_leq(members[i], members[i + 1])) {
      std::ostringstream os;
      os << "not totally ordered: members " << i << " and " << i + 1 << " are incomparable";
      report.fail(os.str());
      return report;
    }
  }

  // Immediate neighbours exist for every member of a finite chain with at
  // least two members; a singleton has neither unless it is the chain of
  // a zero-dimensional space.
  if (members.size() == 1 && input.ambient_dim > 0)
    report.fail("single member has neither an immediate predecessor nor successor");

  // Cover condition over a finite ambient: the chain must contain 0 and
  // the full space, with consecutive members distinct.
  if (!members.front().is_zero()) report.fail("zero subspace missing: a minimal gap is uncovered");
  if (!members.back().is_full()) report.fail("full space missing: a maximal gap is uncovered");

  if (report.ok()) {
    // Probe: every basis-completion vector must land in exactly one gap.
    std::vector<Vec> probes;
    for (Index j = 0; j < input.ambient_dim; ++j) probes.push_back(Vec::Unit(input.ambient_dim, j));
    for (const Subspace& s : members) {
      for (Index i = 0; i < s.dim(); ++i) probes.push_back(s.basis().row(i).transpose());
    }
    for (const Vec& v : probes) {
      bool zero = true;
      for (Index i = 0; i < v.size(); ++i) zero = zero && v(i) == 0;
      if (zero) continue;
      int gaps = 0;
      for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        if (members[i + 1].contains(v) && !members[i].contains(v)) ++gaps;
      }
      if (gaps != 1) {
        report.fail("a nonzero vector does not lie in exactly one successor gap");
        break;
      }
    }
  }
  return report;
}

bool is_maximal(const Flag& f) {
  if (!is_valid_flag(f)) throw InvalidFlag("not a valid flag");
  for (std::size_t i = 0; i + 1 < f.chain.size(); ++i) {
    if (f.chain[i + 1].dim() - f.chain[i].dim() != 1) return false;
  }
  return true;
}

bool is_maximal(const GeneralizedFlagCheckInput& input) {
  if (!is_generalized_flag(input).ok()) throw InvalidFlag("not a generalized flag");
  std::vector<Subspace> members = input.subspaces;
  std::sort(members.begin(), members.end(),
            [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    if (members[i + 1].dim() - members[i].dim() != 1) return false;
  }
  return true;
}

Subalgebra stabilizer(const Flag& f, const Representation& rep, const Subalgebra& ambient) {
  if (!is_valid_flag(f)) throw InvalidFlag("not a valid flag");
  if (f.ambient_dim != rep.module_dim()) throw DimensionMismatch("flag ambient != module dim");

  const Index d = ambient.dim();
  // One linear system: for every chain member F, every basis vector w of
  // F and every membership condition row of F, require
  //   conditions * rho(sum c_b u_b) * w = 0.
  std::vector<Mat> basis_actions;
  for (Index b = 0; b < d; ++b) basis_actions.push_back(rep.action_of(ambient.basis_vector(b)));

  std::vector<Vec> condition_rows;
  for (const Subspace& member : f.chain) {
    const Mat conditions = member.membership_conditions();
    for (Index i = 0; i < member.dim(); ++i) {
      const Vec w = member.basis().row(i).transpose();
      for (Index r = 0; r < conditions.rows(); ++r) {
        Vec row(d);
        for (Index b = 0; b < d; ++b)
          row(b) = conditions.row(r).dot(Vec(basis_actions[static_cast<std::size_t>(b)] * w));
        condition_rows.push_back(std::move(row));
      }
    }
  }
  Mat system(static_cast<Index>(condition_rows.size()), d);
  for (Index r = 0; r < system.rows(); ++r)
    system.row(r) = condition_rows[static_cast<std::size_t>(r)].transpose();

  const Subspace coeff_kernel = kernel(system);
  std::vector<Vec> vectors;
  for (Index i = 0; i < coeff_kernel.dim(); ++i) {
    Vec x = Vec::Zero(ambient.parent().dim());
    for (Index b = 0; b < d; ++b) x += coeff_kernel.basis()(i, b) * ambient.basis_vector(b);
    vectors.push_back(x);
  }
  // Bracket closure holds because the stabilizer of a chain is closed
  // under commutators; the Subalgebra constructor asserts it.
  return Subalgebra(ambient.parent(), span(vectors, ambient.parent().dim()));
}

bool is_stabilized(const Flag& f, const Representation& rep, const Subalgebra& A) {
  if (!is_valid_flag(f)) throw InvalidFlag("not a valid flag");
  if (f.ambient_dim != rep.module_dim()) throw DimensionMismatch("flag ambient != module dim");
  for (Index b = 0; b < A.dim(); ++b) {
    const Mat act = rep.action_of(A.basis_vector(b));
    for (const Subspace& member : f.chain) {
      for (Index i = 0; i < member.dim(); ++i) {
        if (!member.contains(act * member.basis().row(i).transpose())) return false;
      }
    }
  }
  return true;
}

Flag restrict_chain(const std::vector<Subspace>& chain, const Subspace& W) {
  std::vector<Subspace> sorted = sort_chain(chain);
  std::vector<Subspace> members;
  for (const Subspace& big : sorted) {
    if (big.ambient_dim() != W.ambient_dim()) throw DimensionMismatch("chain/W ambient mismatch");
    const Subspace meet = subspace_intersect(big, W);
    // Re-express in W-coordinates.
    Mat rows(meet.dim(), W.dim());
    for (Index i = 0; i < meet.dim(); ++i) {
      const auto coords = W.coordinates_of(meet.basis().row(i).transpose());
      rows.row(i) = coords->transpose();  // meet <= W by construction
    }
    Subspace small(W.dim(), rows);
    if (members.empty() || !(members.back() == small)) members.push_back(std::move(small));
  }
  return make_flag(W.dim(), std::move(members));
}

}  // namespace flagstab
