#include "flagstab/ultra.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace flagstab::ultra {

namespace {

constexpr std::size_t kFamilyCap = 20;          // members for exhaustive FIP
constexpr long long kTupleCap = 200000;         // ultraproduct tuple enumeration
constexpr long long kIndexFunctionCap = 200000; // verify_ultraflag enumeration

void check_subset(const GroundSet& ground, Bitset s, const char* what) {
  if ((s & ~ground.full_mask()) != 0) throw PreconditionViolated(std::string(what) + ": subset outside ground set");
}

// Visits every superset of `s` inside the ground set.
template <typename F>
void for_each_superset(const GroundSet& ground, Bitset s, F&& visit) {
  const Bitset comp = ground.full_mask() & ~s;
  Bitset sub = comp;
  for (;;) {
    visit(s | sub);
    if (sub == 0) break;
    sub = (sub - 1) & comp;
  }
}

}  // namespace

GroundSet::GroundSet(int size_in) : size(size_in) {
  if (size < 1) throw SizeCap("ground set must be nonempty");
  if (size > 20) throw SizeCap("ground set capped at 20 for exhaustive operations");
}

Ultrafilter Ultrafilter::principal(GroundSet ground, int point) {
  if (point < 0 || point >= ground.size) throw PreconditionViolated("principal point outside ground set");
  std::set<Bitset> members;
  for_each_superset(ground, Bitset{1} << point, [&](Bitset s) { members.insert(s); });
  return Ultrafilter(ground, std::move(members));
}

Ultrafilter Ultrafilter::from_family(const SetFamily& family) {
  if (!is_ultrafilter(family)) throw PreconditionViolated("family is not an ultrafilter");
  return Ultrafilter(family.ground, family.members);
}

int Ultrafilter::principal_point() const {
  Bitset meet = ground_.full_mask();
  for (Bitset s : members_) meet &= s;
  if (std::popcount(meet) != 1) throw Error("internal: finite ultrafilter is not principal");
  return std::countr_zero(meet);
}

bool has_fip(const SetFamily& family) {
  if (family.members.size() > kFamilyCap) throw CapExceeded("family too large for exhaustive FIP check");
  std::vector<Bitset> members(family.members.begin(), family.members.end());
  for (Bitset m : members) check_subset(family.ground, m, "has_fip");
  const std::size_t n = members.size();
  for (Bitset pick = 1; pick < (Bitset{1} << n); ++pick) {
    Bitset meet = family.ground.full_mask();
    for (std::size_t i = 0; i < n; ++i) {
      if (pick & (Bitset{1} << i)) meet &= members[i];
    }
    if (meet == 0) return false;
  }
  return true;
}

SetFamily generate_filter(const SetFamily& family) {
  if (!has_fip(family)) throw NoFIP("family has an empty finite intersection");
  std::vector<Bitset> members(family.members.begin(), family.members.end());
  const std::size_t n = members.size();
  std::set<Bitset> intersections;
  if (n == 0) {
    intersections.insert(family.ground.full_mask());  // empty intersection is X
  }
  for (Bitset pick = 1; pick < (Bitset{1} << n); ++pick) {
    Bitset meet = family.ground.full_mask();
    for (std::size_t i = 0; i < n; ++i) {
      if (pick & (Bitset{1} << i)) meet &= members[i];
    }
    intersections.insert(meet);
  }
  SetFamily filter{family.ground, {}};
  for (Bitset base : intersections) {
    for_each_superset(family.ground, base, [&](Bitset s) { filter.members.insert(s); });
  }
  return filter;
}

bool is_filter(const SetFamily& family) {
  for (Bitset m : family.members) check_subset(family.ground, m, "is_filter");
  if (family.members.empty()) return false;
  if (family.members.count(0) > 0) return false;
  for (Bitset a : family.members) {
    for (Bitset b : family.members) {
      if (family.members.count(a & b) == 0) return false;
    }
  }
  for (Bitset a : family.members) {
    bool closed = true;
    for_each_superset(family.ground, a, [&](Bitset s) {
      if (family.members.count(s) == 0) closed = false;
    });
    if (!closed) return false;
  }
  return true;
}

bool is_ultrafilter(const SetFamily& family) {
  if (!is_filter(family)) return false;
  const Bitset full = family.ground.full_mask();
  for (Bitset t = 0; t <= full; ++t) {
    const bool in = family.members.count(t) > 0;
    const bool complement_in = family.members.count(full & ~t) > 0;
    if (in == complement_in) return false;
  }
  return true;
}

std::vector<Ultrafilter> enumerate_ultrafilters(GroundSet ground) {
  std::vector<Ultrafilter> out;
  for (int point = 0; point < ground.size; ++point) out.push_back(Ultrafilter::principal(ground, point));
  return out;
}

std::size_t partition_selects_one(const Ultrafilter& uf, const std::vector<Bitset>& parts) {
  Bitset seen = 0;
  for (Bitset p : parts) {
    check_subset(uf.ground(), p, "partition_selects_one");
    if ((seen & p) != 0) throw PreconditionViolated("parts overlap");
    seen |= p;
  }
  if (!uf.contains(seen)) throw PreconditionViolated("union of parts is not in the ultrafilter");
  std::size_t selected = parts.size();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (uf.contains(parts[i])) {
      if (selected != parts.size()) throw Error("internal: two disjoint parts are both large");
      selected = i;
    }
  }
  if (selected == parts.size()) throw Error("internal: no part selected by the ultrafilter");
  return selected;
}

// ---------------------------------------------------------------------------

FiniteStructure FiniteStructure::from_tables(std::string name, Kind kind, int prime, int size,
                                             std::vector<std::vector<int>> add,
                                             std::vector<int> neg,
                                             std::vector<std::vector<int>> smul) {
  FiniteStructure s;
  s.name_ = std::move(name);
  s.kind_ = kind;
  s.prime_ = prime;
  s.size_ = size;
  s.add_ = std::move(add);
  s.neg_ = std::move(neg);
  s.smul_ = std::move(smul);
  return s;
}

FiniteStructure FiniteStructure::cyclic(int n) {
  if (n < 1) throw PreconditionViolated("cyclic group needs n >= 1");
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  std::vector<int> neg(n);
  for (int x = 0; x < n; ++x) {
    neg[x] = (n - x) % n;
    for (int y = 0; y < n; ++y) add[x][y] = (x + y) % n;
  }
  return from_tables("z" + std::to_string(n), Kind::AbelianGroup, 0, n, std::move(add),
                     std::move(neg), {});
}

FiniteStructure FiniteStructure::direct_sum(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.kind_ != Kind::AbelianGroup || b.kind_ != Kind::AbelianGroup)
    throw SignatureMismatch("direct_sum is defined for abelian groups");
  const int n = a.size_ * b.size_;
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  std::vector<int> neg(n);
  auto encode = [&](int i, int j) { return i * b.size_ + j; };
  for (int i = 0; i < a.size_; ++i) {
    for (int j = 0; j < b.size_; ++j) {
      const int x = encode(i, j);
      neg[x] = encode(a.neg(i), b.neg(j));
      for (int k = 0; k < a.size_; ++k)
        for (int l = 0; l < b.size_; ++l) add[x][encode(k, l)] = encode(a.add(i, k), b.add(j, l));
    }
  }
  return from_tables(a.name_ + "x" + b.name_, Kind::AbelianGroup, 0, n, std::move(add),
                     std::move(neg), {});
}

FiniteStructure FiniteStructure::vector_space(int prime, int dim) {
  if (prime < 2 || dim < 1) throw PreconditionViolated("vector space needs a prime and dim >= 1");
  int n = 1;
  for (int i = 0; i < dim; ++i) n *= prime;
  auto digitwise = [&](int x, int y, auto&& f) {
    int out = 0, place = 1;
    for (int i = 0; i < dim; ++i) {
      const int dx = (x / place) % prime, dy = (y / place) % prime;
      out += f(dx, dy) * place;
      place *= prime;
    }
    return out;
  };
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  std::vector<int> neg(n);
  std::vector<std::vector<int>> smul(static_cast<std::size_t>(prime), std::vector<int>(n));
  for (int x = 0; x < n; ++x) {
    neg[x] = digitwise(x, 0, [&](int dx, int) { return (prime - dx) % prime; });
    for (int y = 0; y < n; ++y) add[x][y] = digitwise(x, y, [&](int dx, int dy) { return (dx + dy) % prime; });
    for (int c = 0; c < prime; ++c)
      smul[static_cast<std::size_t>(c)][x] = digitwise(x, 0, [&](int dx, int) { return (c * dx) % prime; });
  }
  return from_tables("f" + std::to_string(prime) + "^" + std::to_string(dim), Kind::VectorSpace,
                     prime, n, std::move(add), std::move(neg), std::move(smul));
}

int FiniteStructure::add(int x, int y) const {
  return add_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
}

int FiniteStructure::neg(int x) const { return neg_[static_cast<std::size_t>(x)]; }

int FiniteStructure::smul(int scalar, int x) const {
  if (kind_ != Kind::VectorSpace) throw SignatureMismatch("scalar multiple on a plain group");
  return smul_[static_cast<std::size_t>(scalar)][static_cast<std::size_t>(x)];
}

std::vector<int> FiniteStructure::generated_subsystem(const std::vector<int>& seed) const {
  std::set<int> closure(seed.begin(), seed.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<int> current(closure.begin(), closure.end());
    auto insert = [&](int e) {
      if (closure.insert(e).second) grew = true;
    };
    for (int x : current) {
      insert(neg(x));
      if (kind_ == Kind::VectorSpace) {
        for (int c = 0; c < prime_; ++c) insert(smul(c, x));
      }
      for (int y : current) insert(add(x, y));
    }
  }
  return std::vector<int>(closure.begin(), closure.end());
}

std::vector<FiniteStructure> shipped_structures() {
  std::vector<FiniteStructure> out;
  out.push_back(FiniteStructure::cyclic(2));
  out.push_back(FiniteStructure::cyclic(3));
  out.push_back(FiniteStructure::cyclic(4));
  out.push_back(FiniteStructure::direct_sum(FiniteStructure::cyclic(2), FiniteStructure::cyclic(2)));
  out.push_back(FiniteStructure::vector_space(2, 1));
  out.push_back(FiniteStructure::vector_space(2, 2));
  out.push_back(FiniteStructure::vector_space(3, 1));
  return out;
}

namespace {

Bitset agreement_set(const std::vector<int>& f, const std::vector<int>& g) {
  Bitset out = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == g[i]) out |= Bitset{1} << i;
  }
  return out;
}

}  // namespace

UltraproductResult ultraproduct_classes(const std::vector<FiniteStructure>& factors,
                                        const Ultrafilter& uf) {
  if (factors.empty()) throw SignatureMismatch("no factors");
  if (static_cast<int>(factors.size()) != uf.ground().size)
    throw DimensionMismatch("one factor per ground point required");
  for (const auto& f : factors) {
    if (!f.same_signature(factors.front())) throw SignatureMismatch("factors have mixed signatures");
  }
  const std::size_t points = factors.size();

  long long tuple_count = 1;
  for (const auto& f : factors) {
    tuple_count *= f.size();
    if (tuple_count > kTupleCap) throw CapExceeded("tuple enumeration too large");
  }

  auto decode = [&](long long index) {
    std::vector<int> tuple(points);
    for (std::size_t i = 0; i < points; ++i) {
      tuple[i] = static_cast<int>(index % factors[i].size());
      index /= factors[i].size();
    }
    return tuple;
  };

  const auto uf_equal = [&](const std::vector<int>& f, const std::vector<int>& g) {
    return uf.contains(agreement_set(f, g));
  };

  // Classes, with the zero class first so element 0 of the quotient is 0.
  std::vector<std::vector<int>> reps{std::vector<int>(points, 0)};
  std::vector<int> class_of_tuple(static_cast<std::size_t>(tuple_count), -1);
  auto class_of = [&](const std::vector<int>& tuple) {
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (uf_equal(tuple, reps[c])) return static_cast<int>(c);
    }
    reps.push_back(tuple);
    return static_cast<int>(reps.size() - 1);
  };
  for (long long i = 0; i < tuple_count; ++i)
    class_of_tuple[static_cast<std::size_t>(i)] = class_of(decode(i));

  const std::size_t classes = reps.size();
  auto pointwise = [&](const std::vector<int>& f, const std::vector<int>& g, auto&& op) {
    std::vector<int> out(points);
    for (std::size_t i = 0; i < points; ++i) out[i] = op(factors[i], f[i], g[i]);
    return out;
  };

  std::vector<std::vector<int>> add(classes, std::vector<int>(classes));
  std::vector<int> neg(classes);
  for (std::size_t i = 0; i < classes; ++i) {
    neg[i] = class_of(pointwise(reps[i], reps[i], [](const FiniteStructure& s, int x, int) {
      return s.neg(x);
    }));
    for (std::size_t j = 0; j < classes; ++j) {
      add[i][j] = class_of(pointwise(reps[i], reps[j], [](const FiniteStructure& s, int x, int y) {
        return s.add(x, y);
      }));
    }
  }
  std::vector<std::vector<int>> smul;
  if (factors.front().kind() == FiniteStructure::Kind::VectorSpace) {
    const int p = factors.front().prime();
    smul.assign(static_cast<std::size_t>(p), std::vector<int>(classes));
    for (int c = 0; c < p; ++c) {
      for (std::size_t i = 0; i < classes; ++i) {
        smul[static_cast<std::size_t>(c)][i] =
            class_of(pointwise(reps[i], reps[i], [&](const FiniteStructure& s, int x, int) {
              return s.smul(c, x);
            }));
      }
    }
  }

  UltraproductResult result{
      FiniteStructure::from_tables("prod/" + std::to_string(uf.principal_point()),
                                   factors.front().kind(), factors.front().prime(),
                                   static_cast<int>(classes), add, neg, smul),
      reps,
      {},
      {}};

  // Well-definedness: the induced operations do not depend on the choice
  // of representatives (checked on every tuple pair when affordable).
  if (tuple_count * tuple_count <= 1000000) {
    for (long long i = 0; i < tuple_count && result.report.ok(); ++i) {
      const auto fi = decode(i);
      const int ci = class_of_tuple[static_cast<std::size_t>(i)];
      for (long long j = 0; j < tuple_count; ++j) {
        const auto fj = decode(j);
        const int cj = class_of_tuple[static_cast<std::size_t>(j)];
        const auto sum = pointwise(fi, fj, [](const FiniteStructure& s, int x, int y) {
          return s.add(x, y);
        });
        if (class_of(sum) != add[static_cast<std::size_t>(ci)][static_cast<std::size_t>(cj)]) {
          result.report.fail("addition is not well defined on classes");
          break;
        }
      }
    }
  }

  // Projection to the factor at the principal point: an isomorphism.
  const int t = uf.principal_point();
  const FiniteStructure& target = factors[static_cast<std::size_t>(t)];
  result.iso.resize(classes);
  std::set<int> image;
  for (std::size_t i = 0; i < classes; ++i) {
    result.iso[i] = reps[i][static_cast<std::size_t>(t)];
    image.insert(result.iso[i]);
  }
  if (static_cast<int>(classes) != target.size() || static_cast<int>(image.size()) != target.size())
    result.report.fail("projection to the principal factor is not bijective");
  for (std::size_t i = 0; i < classes && result.report.ok(); ++i) {
    if (target.neg(result.iso[i]) != result.iso[static_cast<std::size_t>(neg[i])])
      result.report.fail("projection does not preserve negation");
    for (std::size_t j = 0; j < classes; ++j) {
      if (target.add(result.iso[i], result.iso[j]) !=
          result.iso[static_cast<std::size_t>(add[i][j])]) {
        result.report.fail("projection does not preserve addition");
        break;
      }
    }
  }
  if (!smul.empty()) {
    for (int c = 0; c < factors.front().prime() && result.report.ok(); ++c) {
      for (std::size_t i = 0; i < classes; ++i) {
        if (target.smul(c, result.iso[i]) !=
            result.iso[static_cast<std::size_t>(smul[static_cast<std::size_t>(c)][i])]) {
          result.report.fail("projection does not preserve scalar multiples");
          break;
        }
      }
    }
  }
  return result;
}

Report verify_malcev_map(const FiniteStructure& A, const MalcevEmbedding& emb,
                         const std::vector<std::vector<int>>& candidate_psi) {
  Report report;
  const std::size_t points = emb.subsystems.size();
  if (static_cast<int>(candidate_psi.size()) != A.size()) {
    report.fail("candidate map has the wrong domain size");
    return report;
  }
  for (const auto& tuple : candidate_psi) {
    if (tuple.size() != points) {
      report.fail("candidate tuple has the wrong length");
      return report;
    }
  }
  const auto uf_equal = [&](const std::vector<int>& f, const std::vector<int>& g) {
    return emb.uf.contains(agreement_set(f, g));
  };

  for (int x = 0; x < A.size(); ++x) {
    for (std::size_t alpha = 0; alpha < points; ++alpha) {
      const auto& sub = emb.subsystems[alpha];
      if (!std::binary_search(sub.begin(), sub.end(), candidate_psi[static_cast<std::size_t>(x)][alpha])) {
        report.fail("psi value escapes its subsystem");
        return report;
      }
    }
  }

  auto pointwise_binary = [&](int x, int y) {
    std::vector<int> out(points);
    for (std::size_t alpha = 0; alpha < points; ++alpha)
      out[alpha] = A.add(candidate_psi[static_cast<std::size_t>(x)][alpha],
                         candidate_psi[static_cast<std::size_t>(y)][alpha]);
    return out;
  };

  for (int x = 0; x < A.size() && report.ok(); ++x) {
    // negation
    std::vector<int> pointwise_neg(points);
    for (std::size_t alpha = 0; alpha < points; ++alpha)
      pointwise_neg[alpha] = A.neg(candidate_psi[static_cast<std::size_t>(x)][alpha]);
    if (!uf_equal(candidate_psi[static_cast<std::size_t>(A.neg(x))], pointwise_neg))
      report.fail("psi does not preserve negation at " + std::to_string(x));
    if (A.kind() == FiniteStructure::Kind::VectorSpace) {
      for (int c = 0; c < A.prime(); ++c) {
        std::vector<int> pointwise_smul(points);
        for (std::size_t alpha = 0; alpha < points; ++alpha)
          pointwise_smul[alpha] = A.smul(c, candidate_psi[static_cast<std::size_t>(x)][alpha]);
        if (!uf_equal(candidate_psi[static_cast<std::size_t>(A.smul(c, x))], pointwise_smul))
          report.fail("psi does not preserve a scalar multiple at " + std::to_string(x));
      }
    }
    for (int y = 0; y < A.size(); ++y) {
      if (!uf_equal(candidate_psi[static_cast<std::size_t>(A.add(x, y))], pointwise_binary(x, y))) {
        report.fail("psi does not preserve addition at (" + std::to_string(x) + "," +
                    std::to_string(y) + ")");
        break;
      }
    }
  }

  for (int x = 0; x < A.size() && report.ok(); ++x) {
    for (int y = x + 1; y < A.size(); ++y) {
      if (uf_equal(candidate_psi[static_cast<std::size_t>(x)], candidate_psi[static_cast<std::size_t>(y)])) {
        report.fail("psi is not injective: " + std::to_string(x) + " ~ " + std::to_string(y));
        break;
      }
    }
  }
  return report;
}

MalcevEmbedding malcev_embedding(const FiniteStructure& A) {
  if (A.size() > 4) throw SizeCap("Malcev index set is exponential; |A| capped at 4");
  const int n = A.size();
  const int subset_count = (1 << n) - 1;

  GroundSet ground(subset_count);
  std::vector<Bitset> index_subsets;
  for (int mask = 1; mask <= subset_count; ++mask) index_subsets.push_back(static_cast<Bitset>(mask));

  SetFamily cones{ground, {}};
  std::vector<Bitset> cone_of(static_cast<std::size_t>(subset_count));
  for (int i = 0; i < subset_count; ++i) {
    Bitset cone = 0;
    for (int j = 0; j < subset_count; ++j) {
      if ((index_subsets[static_cast<std::size_t>(i)] & ~index_subsets[static_cast<std::size_t>(j)]) == 0)
        cone |= Bitset{1} << j;
    }
    cone_of[static_cast<std::size_t>(i)] = cone;
    cones.members.insert(cone);
  }

  // The top subset (all of A) lies in every cone, so the principal
  // ultrafilter at its index contains the whole cone family.
  const int top_index = subset_count - 1;
  Ultrafilter uf = Ultrafilter::principal(ground, top_index);

  std::vector<std::vector<int>> subsystems;
  for (int i = 0; i < subset_count; ++i) {
    std::vector<int> seed;
    for (int e = 0; e < n; ++e) {
      if (index_subsets[static_cast<std::size_t>(i)] & (Bitset{1} << e)) seed.push_back(e);
    }
    subsystems.push_back(A.generated_subsystem(seed));
  }

  // psi_x(alpha) = x when x generates into A_alpha, else d(alpha); the
  // default section d is constantly the zero element.
  std::vector<std::vector<int>> psi(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(subset_count), 0));
  for (int x = 0; x < n; ++x) {
    for (int i = 0; i < subset_count; ++i) {
      const auto& sub = subsystems[static_cast<std::size_t>(i)];
      if (std::binary_search(sub.begin(), sub.end(), x)) psi[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)] = x;
    }
  }

  MalcevEmbedding emb{ground, std::move(index_subsets), std::move(cones), std::move(uf),
                      std::move(subsystems), std::move(psi), Report{}};

  if (!has_fip(emb.cones)) emb.report.fail("cones fail the finite intersection property");
  for (Bitset cone : emb.cones.members) {
    if (!emb.uf.contains(cone)) {
      emb.report.fail("a cone is missing from the ultrafilter");
      break;
    }
  }
  emb.report.merge(verify_malcev_map(A, emb, emb.psi));
  return emb;
}

// ---------------------------------------------------------------------------

std::vector<int> UltraFlagSystem::dims() const {
  std::vector<int> out;
  for (const Flag& f : factor_flags) out.push_back(static_cast<int>(f.ambient_dim));
  return out;
}

UltraFlagSystem standard_ultraflag(const std::vector<Index>& dims, int point) {
  GroundSet ground(static_cast<int>(dims.size()));
  std::vector<Flag> flags;
  for (Index d : dims) flags.push_back(standard_flag(d));
  return UltraFlagSystem{ground, std::move(flags), Ultrafilter::principal(ground, point)};
}

FlagIndexFunction q_min(const std::vector<int>& dims) {
  return FlagIndexFunction{std::vector<int>(dims.size(), 0)};
}

FlagIndexFunction q_max(const std::vector<int>& dims) { return FlagIndexFunction{dims}; }

namespace {

void check_index_function(const FlagIndexFunction& q, const std::vector<int>& dims) {
  if (q.values.size() != dims.size()) throw DimensionMismatch("index function length != ground size");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (q.values[i] < 0 || q.values[i] > dims[i])
      throw PreconditionViolated("index function out of factor range");
  }
}

}  // namespace

Comparison uf_compare(const FlagIndexFunction& p, const FlagIndexFunction& q,
                      const Ultrafilter& uf) {
  if (p.values.size() != q.values.size() ||
      static_cast<int>(p.values.size()) != uf.ground().size)
    throw DimensionMismatch("index functions live on different grounds");
  Bitset greater = 0, equal = 0, less = 0;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (p.values[i] > q.values[i]) greater |= Bitset{1} << i;
    else if (p.values[i] == q.values[i]) equal |= Bitset{1} << i;
    else less |= Bitset{1} << i;
  }
  switch (partition_selects_one(uf, {greater, equal, less})) {
    case 0: return Comparison::Greater;
    case 1: return Comparison::Equal;
    default: return Comparison::Less;
  }
}

FlagIndexFunction uf_successor(const FlagIndexFunction& q, const std::vector<int>& dims,
                               const Ultrafilter& uf) {
  check_index_function(q, dims);
  Bitset saturated = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (q.values[i] == dims[i]) saturated |= Bitset{1} << i;
  }
  if (uf.contains(saturated)) throw AtBoundary("q is already maximal");
  FlagIndexFunction out = q;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (out.values[i] < dims[i]) ++out.values[i];
  }
  return out;
}

FlagIndexFunction uf_predecessor(const FlagIndexFunction& q, const std::vector<int>& dims,
                                 const Ultrafilter& uf) {
  check_index_function(q, dims);
  Bitset at_zero = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (q.values[i] == 0) at_zero |= Bitset{1} << i;
  }
  if (uf.contains(at_zero)) throw AtBoundary("q is already minimal");
  FlagIndexFunction out = q;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (out.values[i] > 0) --out.values[i];
  }
  return out;
}

Subspace realized(const UltraFlagSystem& sys, const FlagIndexFunction& q) {
  const std::vector<int> dims = sys.dims();
  check_index_function(q, dims);
  const int t = sys.uf.principal_point();
  const Flag& f = sys.factor_flags[static_cast<std::size_t>(t)];
  if (f.length() != f.ambient_dim + 1)
    throw PreconditionViolated("factor flag at the principal point is not full");
  return f.chain[static_cast<std::size_t>(q.values[static_cast<std::size_t>(t)])];
}

FlagIndexFunction uf_locate(const ProductVector& v, const UltraFlagSystem& sys) {
  if (static_cast<int>(v.size()) != sys.ground.size)
    throw DimensionMismatch("product vector length != ground size");
  Bitset support = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].size() != sys.factor_flags[i].ambient_dim)
      throw DimensionMismatch("component has wrong factor dimension");
    for (Index j = 0; j < v[i].size(); ++j) {
      if (v[i](j) != 0) {
        support |= Bitset{1} << i;
        break;
      }
    }
  }
  if (!sys.uf.contains(support)) throw ZeroVector("vector is uf-equivalent to zero");

  FlagIndexFunction q{std::vector<int>(v.size(), 0)};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if ((support & (Bitset{1} << i)) == 0) continue;
    const Flag& f = sys.factor_flags[i];
    for (std::size_t level = 0; level < f.chain.size(); ++level) {
      if (f.chain[level].contains(v[i])) {
        q.values[i] = static_cast<int>(level);
        break;
      }
    }
  }
  return q;
}

Report verify_ultraflag(const UltraFlagSystem& sys) {
  Report report;
  if (static_cast<int>(sys.factor_flags.size()) != sys.ground.size) {
    report.fail("one factor flag per ground point required");
    return report;
  }
  for (std::size_t k = 0; k < sys.factor_flags.size(); ++k) {
    const Flag& f = sys.factor_flags[k];
    if (!is_valid_flag(f)) {
      report.fail("factor flag " + std::to_string(k) + " is not a valid flag");
    } else if (!is_maximal(f)) {
      report.fail("factor flag " + std::to_string(k) +
                  " is not full: a quotient exceeds dimension 1, so maximality fails");
    }
  }
  if (!report.ok()) return report;

  const std::vector<int> dims = sys.dims();
  const int t = sys.uf.principal_point();
  const int n_t = dims[static_cast<std::size_t>(t)];

  // Enumerate every index function (capped).
  long long count = 1;
  for (int d : dims) {
    count *= d + 1;
    if (count > kIndexFunctionCap) {
      report.fail("index-function enumeration exceeds the cap");
      return report;
    }
  }
  std::vector<FlagIndexFunction> all;
  all.reserve(static_cast<std::size_t>(count));
  for (long long code = 0; code < count; ++code) {
    FlagIndexFunction q{std::vector<int>(dims.size(), 0)};
    long long rest = code;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      q.values[i] = static_cast<int>(rest % (dims[i] + 1));
      rest /= dims[i] + 1;
    }
    all.push_back(std::move(q));
  }

  // Total order by inclusion, matching uf_compare on every pair.
  for (const auto& p : all) {
    const Subspace rp = realized(sys, p);
    for (const auto& q : all) {
      const Subspace rq = realized(sys, q);
      const Comparison cmp = uf_compare(p, q, sys.uf);
      const bool leq = subspace_leq(rp, rq);
      const bool geq = subspace_leq(rq, rp);
      const bool want_equal = leq && geq;
      if ((cmp == Comparison::Equal) != want_equal ||
          (cmp == Comparison::Less) != (leq && !geq) ||
          (cmp == Comparison::Greater) != (geq && !leq)) {
        report.fail("uf_compare verdict disagrees with realized inclusion");
        return report;
      }
    }
  }

  // Immediate neighbours of every class, with quotient dimension one.
  for (int c = 0; c <= n_t; ++c) {
    FlagIndexFunction rep{std::vector<int>(dims.size(), 0)};
    rep.values[static_cast<std::size_t>(t)] = c;
    const Index dim_here = realized(sys, rep).dim();
    if (c < n_t) {
      const FlagIndexFunction succ = uf_successor(rep, dims, sys.uf);
      if (realized(sys, succ).dim() != dim_here + 1) {
        report.fail("successor quotient dimension != 1 at class " + std::to_string(c));
      }
    } else {
      try {
        uf_successor(rep, dims, sys.uf);
        report.fail("maximal class has a successor");
      } catch (const AtBoundary&) {
      }
    }
    if (c > 0) {
      const FlagIndexFunction pred = uf_predecessor(rep, dims, sys.uf);
      if (realized(sys, pred).dim() != dim_here - 1) {
        report.fail("predecessor quotient dimension != 1 at class " + std::to_string(c));
      }
    } else {
      try {
        uf_predecessor(rep, dims, sys.uf);
        report.fail("minimal class has a predecessor");
      } catch (const AtBoundary&) {
      }
    }
  }

  // Locator: every probed nonzero vector sits in exactly one gap.
  std::vector<std::vector<Vec>> probes;
  long long probe_count = 1;
  for (int d : dims) {
    std::vector<Vec> local{Vec::Zero(d)};
    for (Index j = 0; j < d; ++j) local.push_back(Vec::Unit(d, j));
    Vec ones = Vec::Zero(d);
    for (Index j = 0; j < d; ++j) ones(j) = 1;
    local.push_back(ones);
    probe_count *= static_cast<long long>(local.size());
    probes.push_back(std::move(local));
  }
  if (probe_count > kIndexFunctionCap) {
    report.fail("probe enumeration exceeds the cap");
    return report;
  }
  for (long long code = 0; code < probe_count; ++code) {
    ProductVector v;
    long long rest = code;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      v.push_back(probes[i][static_cast<std::size_t>(rest % probes[i].size())]);
      rest /= probes[i].size();
    }
    bool zero_at_point = true;
    const Vec& at_t = v[static_cast<std::size_t>(t)];
    for (Index j = 0; j < at_t.size(); ++j) zero_at_point = zero_at_point && at_t(j) == 0;
    if (zero_at_point) {
      try {
        uf_locate(v, sys);
        report.fail("uf_locate accepted a vector equivalent to zero");
      } catch (const ZeroVector&) {
      }
      continue;
    }
    const FlagIndexFunction qv = uf_locate(v, sys);
    const Flag& f = sys.factor_flags[static_cast<std::size_t>(t)];
    const int level = qv.values[static_cast<std::size_t>(t)];
    int gaps = 0;
    for (int l = 1; l <= n_t; ++l) {
      if (f.chain[static_cast<std::size_t>(l)].contains(at_t) &&
          !f.chain[static_cast<std::size_t>(l - 1)].contains(at_t))
        ++gaps;
    }
    if (level < 1 || gaps != 1 ||
        !f.chain[static_cast<std::size_t>(level)].contains(at_t) ||
        f.chain[static_cast<std::size_t>(level - 1)].contains(at_t)) {
      report.fail("a nonzero vector is not located in exactly one successor gap");
      return report;
    }
  }
  return report;
}

}  // namespace flagstab::ultra
