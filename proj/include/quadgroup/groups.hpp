#pragma once

// Finite groups as validated multiplication tables.  Elements are indices
// 0..n-1 and the identity is always 0.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadgroup/abelian.hpp"
#include "quadgroup/errors.hpp"

namespace qg {

using Elem = std::uint32_t;

/// How associativity of a table was established.
enum class AssociativityCheck { Exhaustive, GeneratorsAndSamples };
std::string to_string(AssociativityCheck a);

class FiniteGroup {
 public:
  FiniteGroup();  // trivial group

  /// Validates closure, identity at 0, inverses and associativity; throws
  /// AlgebraError naming a witness on failure.
  static FiniteGroup from_table(std::vector<Elem> flat_table, std::size_t n, std::string name = "",
                                const Limits& limits = {});
  /// For tables built from already validated groups (subgroups, quotients,
  /// products): closure, identity and inverses are checked, associativity is
  /// inherited.
  static FiniteGroup derived(std::vector<Elem> flat_table, std::size_t n, std::string name,
                             AssociativityCheck inherited, const Limits& limits = {});
  static FiniteGroup from_rows(const std::vector<std::vector<Elem>>& rows, std::string name = "",
                               const Limits& limits = {});

  std::size_t size() const { return data_->n; }
  const std::string& name() const { return data_->name; }
  AssociativityCheck associativity() const { return data_->assoc; }

  Elem mul(Elem a, Elem b) const { return data_->table[static_cast<std::size_t>(a) * data_->n + b]; }
  Elem inv(Elem a) const { return data_->inverse[a]; }
  Elem pow(Elem a, long k) const;
  std::uint64_t order_of(Elem a) const;
  /// [a, b] = a b a^{-1} b^{-1}
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  /// a b a^{-1}
  Elem conjugate(Elem a, Elem b) const { return mul(mul(a, b), inv(a)); }
  bool is_abelian() const;

  const std::vector<Elem>& table() const { return data_->table; }
  /// Same table, regardless of name.
  bool same_as(const FiniteGroup& other) const;
  FiniteGroup renamed(std::string name) const;

 private:
  struct Data {
    std::size_t n = 1;
    std::vector<Elem> table{0};
    std::vector<Elem> inverse{0};
    std::string name;
    AssociativityCheck assoc = AssociativityCheck::Exhaustive;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static std::shared_ptr<Data> basic_checks(std::vector<Elem> t, std::size_t n, std::string name,
                                            const Limits& limits);
  std::shared_ptr<const Data> data_;
};

class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup trivial(const FiniteGroup& g);
  static Subgroup whole(const FiniteGroup& g);
  static Subgroup generated(const FiniteGroup& g, const std::vector<Elem>& generators);
  /// Throws AlgebraError unless the set is a subgroup.
  static Subgroup from_elements(const FiniteGroup& g, std::vector<Elem> elements);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Elem>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Elem a) const { return member_[a]; }
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_whole() const { return elements_.size() == parent_.size(); }
  bool is_subset_of(const Subgroup& other) const;
  bool operator==(const Subgroup& other) const { return elements_ == other.elements_; }

  /// A pair (g, n) with g n g^{-1} outside, if the subgroup is not normal.
  std::optional<std::pair<Elem, Elem>> normality_witness() const;
  bool is_normal() const { return !normality_witness(); }
  bool is_central() const;

 private:
  Subgroup(FiniteGroup g, std::vector<bool> member);
  FiniteGroup parent_;
  std::vector<Elem> elements_;
  std::vector<bool> member_;
};

/// <H ∪ K>
Subgroup join(const Subgroup& h, const Subgroup& k);
Subgroup intersect(const Subgroup& h, const Subgroup& k);
/// [H, K] = <[h, k] : h in H, k in K>
Subgroup commutator_subgroup(const Subgroup& h, const Subgroup& k);
Subgroup derived_subgroup(const FiniteGroup& g);
Subgroup center(const FiniteGroup& g);
/// γ_1 = G, γ_{i+1} = [G, γ_i], up to and including the first repeated term.
std::vector<Subgroup> lower_central_series(const FiniteGroup& g);
/// γ_k(G) for k >= 1.
Subgroup gamma(const FiniteGroup& g, std::size_t k);
/// Least c with γ_{c+1} = 1, or nullopt when the series stabilizes above 1.
std::optional<std::size_t> nilpotency_class(const FiniteGroup& g);
/// Greedy generating set of h: each element in index order that is not yet
/// in the span of the earlier picks.
std::vector<Elem> generating_set(const Subgroup& h);
/// Every subgroup of h, ordered by (size, elements).  Refuses more than `cap`.
std::vector<Subgroup> all_subgroups(const Subgroup& h, std::size_t cap = 10'000);

class GroupHom {
 public:
  GroupHom() = default;
  /// Verifies f(ab) = f(a) f(b) exhaustively; throws AlgebraError with a witness.
  GroupHom(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> table);
  static GroupHom identity(const FiniteGroup& g);
  static GroupHom trivial(const FiniteGroup& domain, const FiniteGroup& codomain);
  /// Extends generator images; throws if they do not define a homomorphism.
  static GroupHom from_generators(const FiniteGroup& domain, const FiniteGroup& codomain,
                                  const std::vector<Elem>& generators, const std::vector<Elem>& images);

  const FiniteGroup& domain() const { return domain_; }
  const FiniteGroup& codomain() const { return codomain_; }
  const std::vector<Elem>& table() const { return table_; }
  Elem operator()(Elem a) const { return table_[a]; }
  GroupHom after(const GroupHom& first) const;  // this ∘ first
  Subgroup kernel() const;
  Subgroup image() const;
  bool operator==(const GroupHom& other) const { return table_ == other.table_; }

 private:
  FiniteGroup domain_, codomain_;
  std::vector<Elem> table_;
};

/// First pair (a, b), lexicographic, with t(ab) != t(a) t(b).
std::optional<std::pair<Elem, Elem>> homomorphism_witness(const FiniteGroup& domain, const FiniteGroup& codomain,
                                                          const std::vector<Elem>& table);

/// A subgroup as a group of its own.  Element i of `group` is elements()[i]
/// of the subgroup, so the identity stays at 0.
struct SubgroupAsGroup {
  FiniteGroup group;
  GroupHom inclusion;
  std::vector<std::int64_t> local_index;  // parent element -> index, or -1
};
SubgroupAsGroup as_group(const Subgroup& h);

/// G/N with cosets ordered by minimal representative.
struct QuotientGroup {
  FiniteGroup group;
  GroupHom projection;
  std::vector<Elem> representative;  // minimal element of each coset
};
QuotientGroup quotient(const Subgroup& n);

/// H/N realized as an FgAb, with dictionaries both ways.
struct AbelianView {
  FgAb group;
  /// Indexed by parent element; empty for elements outside H.
  std::vector<std::optional<Vec>> to_ab;
  /// One preimage in H for each element of `group`, by FgAb mixed-radix index.
  std::vector<Elem> from_ab;

  const Vec& operator()(Elem a) const;
};

/// Throws AlgebraError unless N ⊆ H, N normal in H and H/N abelian.
AbelianView subquotient_ab(const Subgroup& h, const Subgroup& n);
AbelianView abelianization(const FiniteGroup& g);

/// Finite FgAb as a table; element i is A.element_at(i).
FiniteGroup fgab_to_group(const FgAb& a, const Limits& limits = {});

// ---------------------------------------------------------------- builtins

namespace builtin {

FiniteGroup cyclic(std::size_t n);
FiniteGroup elementary(std::size_t p, std::size_t k);
/// Order 2n; r^i s^j has index j n + i.
FiniteGroup dihedral(std::size_t n);
/// 0 = 1, 1 = -1, 2 = i, 3 = -i, 4 = j, 5 = -j, 6 = k, 7 = -k.
FiniteGroup quaternion8();
FiniteGroup symmetric(std::size_t n);
/// Unitriangular 3×3 over Z/p; (a, b, c) has index a + p b + p² c and
/// (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
FiniteGroup heisenberg(std::size_t p);
/// (g, h) has index g + |G| h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, const Limits& limits = {});
/// 1 + T (Z/m)[T] / (T^N); coefficients a_1..a_{N-1} in mixed radix.
FiniteGroup power_series_units(std::size_t m, std::size_t n, const Limits& limits = {});

/// A finite Lie ring (Z/m)^d given by structure constants:
/// brackets[i][j][k] is the coefficient of e_k in [e_i, e_j].
struct LieRing {
  std::size_t modulus = 0;
  std::size_t dim = 0;
  std::vector<std::vector<std::vector<long>>> brackets;

  static LieRing heisenberg(std::size_t m);
  Vec bracket(const Vec& x, const Vec& y) const;
};
/// x ∘ y = x + y + ½[x, y]; requires m odd and a 2-step nilpotent bracket.
FiniteGroup lazard(const LieRing& lie, const Limits& limits = {});

/// Permutation generators in image notation; p·q applies p first.
FiniteGroup from_permutations(std::size_t degree, const std::vector<std::vector<std::size_t>>& generators,
                              std::string name = "", const Limits& limits = {});

}  // namespace builtin

}  // namespace qg
